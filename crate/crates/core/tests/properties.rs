mod common;

use common::binomial;
use exint::complexes::{
    euler_characteristic, homology, homology_hilbert, is_chain_map, is_signed_permutation, koszul_complex,
    koszul_tensor_iso, tensor_complexes,
};
use exint::corpus::Corpus;
use exint::groebner::{syzygies, GroebnerBasis, Ideal, ModuleElement};
use exint::intersect::{
    excess_module, is_regular_sequence, multitor, verify_excess_formula, verify_self_intersection, CIVariety,
    IntersectionInstance,
};
use exint::modules::{
    conormal, exterior_power, hilbert_function, kernel, tensor_modules, FPModule, FreeModule, FreeModuleMap,
    HilbertFunction,
};
use exint::ring::{parse_polynomial, Field, Monomial, MonomialOrder, PolyRing, Polynomial, RingRef};
use exint::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

const NAMES: [&str; 4] = ["x", "y", "z", "w"];

fn ring(nvars: usize, order: MonomialOrder) -> RingRef {
    PolyRing::new(Field::Rational, NAMES[..nvars].iter().copied(), order).unwrap()
}

type RawPoly = Vec<(Vec<u32>, i64, i64)>;

/// Up to six terms with exponents bounded so the total degree stays at most 6.
fn raw_poly(nvars: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=6, nvars), -9i64..=9, 1i64..=4), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(mut e, n, d)| {
                while e.iter().sum::<u32>() > 6 {
                    let i = e.iter().position(|&x| x > 0).unwrap();
                    e[i] -= 1;
                }
                (e, n, d)
            })
            .collect()
    })
}

fn build(r: &RingRef, raw: &RawPoly) -> Polynomial {
    let f = r.field();
    Polynomial::from_terms(
        r,
        raw.iter().map(|(e, n, d)| {
            (
                Monomial::from_exponents(e),
                f.from_ratio(&BigInt::from(*n), &BigInt::from(*d)).unwrap(),
            )
        }),
    )
}

fn triple(nvars: usize) -> impl Strategy<Value = (usize, RawPoly, RawPoly, RawPoly)> {
    (Just(nvars), raw_poly(nvars), raw_poly(nvars), raw_poly(nvars))
}

fn free_hf(r: &RingRef, degrees: Vec<i32>, bound: usize) -> HilbertFunction {
    hilbert_function(&FPModule::free(r, FreeModule::graded(degrees)), bound).unwrap()
}

fn quotient_hf(ideal: &Ideal, bound: usize) -> HilbertFunction {
    hilbert_function(&FPModule::quotient_ring(ideal), bound).unwrap()
}

fn degree(f: &Polynomial) -> i32 {
    f.total_degree().unwrap_or(0) as i32
}

/// A homogeneous sequence from the seeded corpus.
fn seeded_sequence(seed: u64, max_vars: usize, max_len: usize, max_degree: u32) -> (RingRef, Vec<Polynomial>) {
    let mut c = Corpus::new(seed);
    let nvars = c.range(1, max_vars);
    let r = c.ring(nvars);
    let len = c.range(1, max_len);
    let fs = c.sequence(&r, len, max_degree);
    (r, fs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws((n, a, b, c) in (1usize..=4).prop_flat_map(triple)) {
        let r = ring(n, MonomialOrder::GrevLex);
        let (f, g, h) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn leading_term_is_multiplicative((n, a, b, _) in (1usize..=4).prop_flat_map(triple)) {
        let r = ring(n, MonomialOrder::GrevLex);
        let (f, g) = (build(&r, &a), build(&r, &b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Elimination(1)] {
            let (mf, cf) = f.leading_term(order).unwrap();
            let (mg, cg) = g.leading_term(order).unwrap();
            let (m, c) = (&f * &g).leading_term(order).unwrap();
            prop_assert_eq!(m, mf.mul(&mg));
            prop_assert_eq!(c, &cf * &cg);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parse_print_roundtrip((n, a) in (1usize..=4).prop_flat_map(|n| (Just(n), raw_poly(n)))) {
        let r = ring(n, MonomialOrder::GrevLex);
        let f = build(&r, &a);
        prop_assume!(f.total_degree().unwrap_or(0) <= 6);
        let text = f.to_string();
        let back = parse_polynomial(&text, &r).unwrap();
        prop_assert_eq!(&back, &f, "printed as {}", text);
    }
}

fn mixed_generators(seed: u64) -> (RingRef, Vec<Polynomial>) {
    let (r, mut fs) = seeded_sequence(seed, 3, 3, 3);
    // Break homogeneity on odd seeds so the engine also sees affine input.
    if seed % 2 == 1 {
        let x = Polynomial::var(&r, 0);
        fs[0] = &fs[0] + &x;
    }
    (r, fs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn groebner_basis_invariants(seed in any::<u64>()) {
        let (r, fs) = mixed_generators(seed);
        let gens: Vec<ModuleElement> = fs.iter().map(|f| ModuleElement::new(&r, vec![f.clone()])).collect();
        let gb = GroebnerBasis::compute_traced(&r, 1, &gens).unwrap();
        prop_assert!(gb.s_pairs_reduce_to_zero());
        prop_assert!(gb.is_reduced());
        for g in &gens {
            prop_assert!(gb.normal_form(g).unwrap().is_zero());
        }
        // every basis element is an explicit combination of the inputs
        let trace = gb.trace().unwrap();
        for (b, t) in gb.elements().iter().zip(&trace) {
            let mut acc = Polynomial::zero(&r);
            for (c, f) in t.coords().iter().zip(&fs) {
                acc = &acc + &(c * f);
            }
            prop_assert_eq!(&acc, b.coord(0));
        }
        // canonical under reordering the input and steering the pair queue
        let mut rev = gens.clone();
        rev.reverse();
        let shifts: Vec<i32> = (0..rev.len() as i32).map(|i| 3 * i).collect();
        let other = GroebnerBasis::compute_graded(&r, 1, &rev, Some(&shifts), false).unwrap();
        prop_assert_eq!(gb.elements(), other.elements());
    }

    #[test]
    fn syzygies_annihilate(seed in any::<u64>(), rank in 1usize..=2) {
        let mut c = Corpus::new(seed);
        let nv = c.range(2, 3);
        let r = c.ring(nv);
        let n = c.range(2, 4);
        let gens: Vec<ModuleElement> = (0..n)
            .map(|_| ModuleElement::new(&r, c.sequence(&r, rank, 2)))
            .collect();
        for s in syzygies(&r, rank, &gens).unwrap() {
            let mut acc = ModuleElement::zero(&r, rank);
            for (c, g) in s.coords().iter().zip(&gens) {
                acc = acc.add(&g.mul_poly(c));
            }
            prop_assert!(acc.is_zero());
        }
    }

    #[test]
    fn kernel_round_trip(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let nv = c.range(2, 3);
        let r = c.ring(nv);
        let (rows, cols) = (c.range(1, 2), c.range(2, 3));
        let entries: Vec<Vec<Polynomial>> = (0..rows).map(|_| c.sequence(&r, cols, 2)).collect();
        let f = FreeModuleMap::from_rows(&r, FreeModule::standard(cols), FreeModule::standard(rows), entries).unwrap();
        let k = kernel(&f).unwrap();
        for v in k.embedding().unwrap() {
            prop_assert!(f.apply(v).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn dimension_is_order_independent(seed in any::<u64>()) {
        let (r, fs) = seeded_sequence(seed, 3, 3, 3);
        let ideal = Ideal::new(&r, fs);
        let grevlex = ideal.krull_dimension_with_order(MonomialOrder::GrevLex);
        let lex = ideal.krull_dimension_with_order(MonomialOrder::Lex);
        prop_assert_eq!(grevlex, lex);
        if !ideal.is_unit() {
            prop_assert_eq!(ideal.height().unwrap() + grevlex, r.nvars() as i64);
        }
    }

    #[test]
    fn regularity_oracles_agree(seed in any::<u64>()) {
        let (_, fs) = seeded_sequence(seed, 3, 3, 2);
        let rep = is_regular_sequence(&fs).unwrap();
        prop_assert_eq!(rep.height, Some(rep.koszul));
        prop_assert!(rep.oracles_agree());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn koszul_euler_characteristic(seed in any::<u64>()) {
        let bound = 6;
        let (_, fs) = seeded_sequence(seed, 3, 3, 2);
        let k = koszul_complex(&fs).unwrap();
        let chain = euler_characteristic(&k, bound).unwrap();
        let mut from_homology = vec![0i64; bound + 1];
        for q in 0..=k.hi() {
            let h = homology_hilbert(&k, q, bound).unwrap();
            let sign = if q % 2 == 0 { 1 } else { -1 };
            for (a, v) in from_homology.iter_mut().zip(h.values()) {
                *a += sign * *v as i64;
            }
        }
        prop_assert_eq!(&chain, &from_homology);
        // for a regular sequence K resolves R/I
        if is_regular_sequence(&fs).unwrap().koszul {
            let q = quotient_hf(&Ideal::new(fs[0].ring(), fs.clone()), bound);
            let q: Vec<i64> = q.values().iter().map(|&v| v as i64).collect();
            prop_assert_eq!(chain, q);
        }
    }

    #[test]
    fn koszul_h0_is_quotient(seed in any::<u64>()) {
        let (r, fs) = seeded_sequence(seed, 3, 3, 2);
        let k = koszul_complex(&fs).unwrap();
        let h0 = hilbert_function(&homology(&k, 0).unwrap(), 8).unwrap();
        prop_assert_eq!(h0, quotient_hf(&Ideal::new(&r, fs), 8));
    }

    #[test]
    fn koszul_homology_permutation_and_scaling(seed in any::<u64>(), scale in prop::collection::vec(1i64..=5, 3)) {
        let (r, fs) = seeded_sequence(seed, 3, 3, 2);
        let mut moved: Vec<Polynomial> = fs
            .iter()
            .zip(&scale)
            .enumerate()
            .map(|(i, (f, &s))| f.scale(&r.field().from_i64(if i % 2 == 0 { s } else { -s })))
            .collect();
        moved.rotate_left(1);
        let (a, b) = (koszul_complex(&fs).unwrap(), koszul_complex(&moved).unwrap());
        for q in 0..=a.hi() {
            prop_assert_eq!(homology_hilbert(&a, q, 6).unwrap(), homology_hilbert(&b, q, 6).unwrap());
        }
    }

    #[test]
    fn koszul_tensor_iso_is_chain_isomorphism(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let nv = c.range(1, 4);
        let r = c.ring(nv);
        let n = c.range(1, 6);
        let fs = c.sequence(&r, n, 3);
        let k = c.range(0, n);
        let phi = koszul_tensor_iso(&r, &fs[..k], &fs[k..]).unwrap();
        let src = tensor_complexes(&koszul_complex_or_unit(&r, &fs[..k]), &koszul_complex_or_unit(&r, &fs[k..])).unwrap();
        let tgt = koszul_complex(&fs).unwrap();
        prop_assert!(phi.iter().all(is_signed_permutation));
        prop_assert!(is_chain_map(&phi, &src, &tgt).unwrap());
    }

    #[test]
    fn hilbert_tensor_is_symmetric(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let nv = c.range(2, 3);
        let r = c.ring(nv);
        let m = FPModule::quotient_ring(&Ideal::new(&r, c.sequence(&r, 2, 2)));
        let entries = vec![c.sequence(&r, 2, 1)];
        let n = FPModule::new(
            FreeModuleMap::from_rows(&r, FreeModule::graded(vec![1, 1]), FreeModule::graded(vec![0]), entries)
                .unwrap_or_else(|_| FreeModuleMap::zero(&r, FreeModule::graded(vec![]), FreeModule::graded(vec![0]))),
        );
        prop_assume!(n.is_graded());
        let mn = hilbert_function(&tensor_modules(&m, &n), 6).unwrap();
        let nm = hilbert_function(&tensor_modules(&n, &m), 6).unwrap();
        prop_assert_eq!(mn, nm);
    }

    #[test]
    fn conormal_of_regular_sequence_is_free(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let nvars = c.range(1, 4);
        let r = c.ring(nvars);
        let len = c.range(1, nvars.min(3));
        let fs = c.regular_sequence(&r, len);
        let i = Ideal::new(&r, fs.clone());
        let got = hilbert_function(&conormal(&i, &i).unwrap(), 8).unwrap();
        let base = quotient_hf(&i, 8);
        let want = fs.iter().fold(HilbertFunction::zero(8), |acc, f| acc.add(&base.shifted(degree(f))));
        prop_assert_eq!(got, want);
    }
}

fn koszul_complex_or_unit(r: &RingRef, fs: &[Polynomial]) -> exint::complexes::ChainComplex {
    exint::complexes::KoszulData::new(r, fs.to_vec()).unwrap().complex()
}

#[test]
fn exterior_powers_of_free_modules() {
    for nvars in 1..=2 {
        let r = ring(nvars, MonomialOrder::GrevLex);
        for n in 0..=4usize {
            let degrees: Vec<i32> = (0..n as i32).map(|i| i % 3).collect();
            let m = FPModule::free(&r, FreeModule::graded(degrees.clone()));
            for q in 0..=n + 1 {
                let wedge = exterior_power(&m, q as i64).unwrap();
                let got = hilbert_function(&wedge, 6).unwrap();
                // sum over q-subsets of the generator degrees
                let ring_hf = free_hf(&r, vec![0], 6);
                let mut want = HilbertFunction::zero(6);
                for s in exint::modules::subsets(n, q) {
                    want = want.add(&ring_hf.shifted(s.iter().map(|&i| degrees[i]).sum()));
                }
                assert_eq!(got, want, "n = {n}, q = {q}");
                if degrees.iter().all(|&d| d == 0) {
                    assert_eq!(got.values()[0], binomial(n as u64, q as u64));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn self_intersection_formula_holds(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let nvars = c.range(1, 4);
        let r = c.ring(nvars);
        let len = c.range(1, nvars.min(3));
        let y = CIVariety::new("Y", &r, c.regular_sequence(&r, len)).unwrap();
        let v = verify_self_intersection(&y, 6).unwrap();
        prop_assert!(v.pass, "{:?}", v);
        prop_assert_eq!(v.shift_discrepancies().count(), 0);
    }

    #[test]
    fn excess_formula_holds_or_refuses(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let nvars = c.range(2, 4);
        let r = c.ring(nvars);
        let ys: Vec<CIVariety> = (0..2)
            .map(|i| {
                let len = c.range(1, nvars.min(2));
                CIVariety::new(&format!("Y{i}"), &r, c.regular_sequence(&r, len)).unwrap()
            })
            .collect();
        match IntersectionInstance::new("random", ys, None) {
            Ok(inst) => {
                let v = verify_excess_formula(&inst, 6).unwrap();
                prop_assert!(v.pass, "{:?}", v);
                if let (Some(w), Some(e)) = (inst.w(), inst.excess()) {
                    let ew = excess_module(&inst).unwrap();
                    if ew.is_free_over(w.ideal()) {
                        prop_assert_eq!(ew.num_generators(), e);
                    }
                }
            }
            Err(Error::Certification(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn multitor_is_symmetric_and_vanishes(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let nvars = c.range(2, 3);
        let r = c.ring(nvars);
        let n = c.range(2, 3);
        let ys: Vec<CIVariety> = (0..n)
            .map(|i| {
                let len = c.range(1, 2.min(nvars));
                CIVariety::new(&format!("Y{i}"), &r, c.regular_sequence(&r, len)).unwrap()
            })
            .collect();
        let total: usize = ys.iter().map(CIVariety::codim).sum();
        let mut rev = ys.clone();
        rev.reverse();
        rev.rotate_left(1);
        for q in 0..=total as i64 + 1 {
            let a = hilbert_function(&multitor(&ys, q).unwrap(), 5).unwrap();
            let b = hilbert_function(&multitor(&rev, q).unwrap(), 5).unwrap();
            prop_assert_eq!(&a, &b);
            if q > total as i64 {
                prop_assert!(a.is_zero());
            }
        }
    }
}

#[test]
fn hypothesis_gating_refuses_non_lci_intersection() {
    let r = ring(3, MonomialOrder::GrevLex);
    let p = |s: &str| parse_polynomial(s, &r).unwrap();
    let a = CIVariety::new("A", &r, vec![p("x*y")]).unwrap();
    let b = CIVariety::new("B", &r, vec![p("x*z")]).unwrap();
    match IntersectionInstance::new("gated", vec![a, b], None) {
        Err(Error::Certification(msg)) => assert!(msg.contains("gated")),
        other => panic!("expected a certification failure, got {other:?}"),
    }
}
