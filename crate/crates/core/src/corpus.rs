//! Seeded random homogeneous sequences for property checks and bundled
//! scenario corpora.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::modules::monomials_of_degree;
use crate::ring::{Field, MonomialOrder, PolyRing, Polynomial, RingRef};

const VAR_NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

/// A deterministic generator of small homogeneous inputs.
pub struct Corpus {
    rng: ChaCha8Rng,
}

impl Corpus {
    pub fn new(seed: u64) -> Corpus {
        Corpus {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn ring(&mut self, nvars: usize) -> RingRef {
        PolyRing::new(
            Field::Rational,
            VAR_NAMES[..nvars].iter().copied(),
            MonomialOrder::GrevLex,
        )
        .expect("fixed variable names")
    }

    /// A nonzero homogeneous form of the given degree with small integer
    /// coefficients and a random support.
    pub fn form(&mut self, ring: &RingRef, degree: u32) -> Polynomial {
        let field = ring.field();
        let monos = monomials_of_degree(ring.nvars(), degree);
        loop {
            let k = self.rng.gen_range(1..=monos.len().min(3));
            let terms: Vec<_> = monos
                .choose_multiple(&mut self.rng, k)
                .map(|m| {
                    let c = loop {
                        let c = self.rng.gen_range(-3i64..=3);
                        if c != 0 {
                            break c;
                        }
                    };
                    (m.clone(), field.from_i64(c))
                })
                .collect();
            let f = Polynomial::from_terms(ring, terms);
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// `len` forms of degree `1..=max_degree`. About one call in four
    /// multiplies two entries by a common linear form, which tends to
    /// produce non-regular sequences.
    pub fn sequence(&mut self, ring: &RingRef, len: usize, max_degree: u32) -> Vec<Polynomial> {
        let mut fs: Vec<Polynomial> = (0..len)
            .map(|_| {
                let d = self.rng.gen_range(1..=max_degree);
                self.form(ring, d)
            })
            .collect();
        if len >= 2 && max_degree >= 2 && self.rng.gen_bool(0.25) {
            let l = self.form(ring, 1);
            for f in fs.iter_mut().take(2) {
                *f = &self.form(ring, 1) * &l;
            }
        }
        fs
    }

    /// Linear forms and generic quadrics, `len ≤ nvars`, kept only when the
    /// height test says regular.
    pub fn regular_sequence(&mut self, ring: &RingRef, len: usize) -> Vec<Polynomial> {
        loop {
            let fs: Vec<Polynomial> = (0..len)
                .map(|_| {
                    let d = if self.rng.gen_bool(0.5) { 1 } else { 2 };
                    self.form(ring, d)
                })
                .collect();
            let ideal = crate::groebner::Ideal::new(ring, fs.clone());
            if !ideal.is_unit() && ideal.height().ok() == Some(len as i64) {
                return fs;
            }
        }
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }
}

/// A scenario file holding `count` random sequences with `regular` checks,
/// the seed recorded in its header.
pub fn corpus_scenario(seed: u64, count: usize) -> String {
    let mut c = Corpus::new(seed);
    let ring = c.ring(3);
    let mut out = String::new();
    out.push_str(&format!("# random homogeneous sequences, seed {seed}\n"));
    out.push_str(&format!("seed {seed}\nfield Q\nvars x, y, z\norder grevlex\n\n"));
    for i in 0..count {
        let len = c.range(1, 3);
        let fs = c.sequence(&ring, len, 2);
        let body: Vec<String> = fs.iter().map(ToString::to_string).collect();
        out.push_str(&format!("ideal s{i} = [{}]\n", body.join(", ")));
    }
    out.push('\n');
    for i in 0..count {
        out.push_str(&format!("check regular s{i}\n"));
    }
    out
}
