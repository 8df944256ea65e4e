//! The Koszul complex on the variables as a graded-commutative algebra.
//!
//! Elements are maps from subset masks to polynomial coefficients; the
//! basis of `K_i` is the list of `i`-subsets in (size, lex) order, matching
//! [`koszul_complex`](crate::resolution::koszul_complex) on the variables.

use std::collections::{BTreeMap, HashMap};

use crate::complex::{Element, GradedFreeComplex};
use crate::exterior;
use crate::field::Scalar;
use crate::ideal::MonomialIdeal;
use crate::poly::Polynomial;
use crate::resolution::koszul_complex;
use crate::ring::Ring;

/// `Σ p_S e_S`, keyed by subset mask.
pub type KElem = BTreeMap<u64, Polynomial>;

pub(crate) fn kelem_add(acc: &mut KElem, s: u64, p: &Polynomial) {
    if p.is_zero() {
        return;
    }
    let sum = match acc.get(&s) {
        Some(q) => q.add(p),
        None => p.clone(),
    };
    if sum.is_zero() {
        acc.remove(&s);
    } else {
        acc.insert(s, sum);
    }
}

#[derive(Clone, Debug)]
pub struct KoszulAlgebra {
    ring: Ring,
    subsets: Vec<Vec<u64>>,
    index: Vec<HashMap<u64, usize>>,
    complex: GradedFreeComplex,
}

impl KoszulAlgebra {
    pub fn new(ring: &Ring) -> Self {
        let n = ring.nvars();
        let vars: Vec<Polynomial> = (0..n)
            .map(|i| Polynomial::monomial(ring.var(i), ring.field()))
            .collect();
        let complex = koszul_complex(ring, &vars).expect("variables are homogeneous of degree 1");
        let subsets: Vec<Vec<u64>> = (0..=n).map(|k| exterior::subsets(n, k)).collect();
        let index = subsets.iter().map(|l| exterior::index_of(l)).collect();
        KoszulAlgebra {
            ring: ring.clone(),
            subsets,
            index,
            complex,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn complex(&self) -> &GradedFreeComplex {
        &self.complex
    }

    pub fn subsets(&self, i: usize) -> &[u64] {
        self.subsets.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn position(&self, s: u64) -> usize {
        self.index[s.count_ones() as usize][&s]
    }

    /// `d(p e_S) = Σ_{j∈S} (-1)^{pos(j)} p x_j e_{S∖j}`.
    pub fn d(&self, v: &KElem) -> KElem {
        let mut out = KElem::new();
        for (&s, p) in v {
            for j in exterior::elements(s) {
                let mut term = p.mul_monomial(&self.ring.var(j));
                if exterior::removal_sign(s, j) < 0 {
                    term = term.neg();
                }
                kelem_add(&mut out, s & !(1 << j), &term);
            }
        }
        out
    }

    pub fn wedge(&self, a: &KElem, b: &KElem) -> KElem {
        let mut out = KElem::new();
        for (&s, p) in a {
            for (&t, q) in b {
                let sign = exterior::wedge_sign(s, t);
                if sign == 0 {
                    continue;
                }
                let mut term = p.mul(q);
                if sign < 0 {
                    term = term.neg();
                }
                kelem_add(&mut out, s | t, &term);
            }
        }
        out
    }

    pub fn reduce(&self, v: &KElem, q: &MonomialIdeal) -> KElem {
        v.iter()
            .filter_map(|(s, p)| {
                let r = q.reduce(p);
                (!r.is_zero()).then_some((*s, r))
            })
            .collect()
    }

    pub fn scale(&self, v: &KElem, c: &Scalar) -> KElem {
        v.iter()
            .filter_map(|(s, p)| {
                let r = p.scale(c);
                (!r.is_zero()).then_some((*s, r))
            })
            .collect()
    }

    pub fn neg(&self, v: &KElem) -> KElem {
        v.iter().map(|(s, p)| (*s, p.neg())).collect()
    }

    pub fn add(&self, a: &KElem, b: &KElem) -> KElem {
        let mut out = a.clone();
        for (s, p) in b {
            kelem_add(&mut out, *s, p);
        }
        out
    }

    /// `e_S` with coefficient 1.
    pub fn basis(&self, s: u64) -> KElem {
        KElem::from([(
            s,
            Polynomial::constant(self.ring.nvars(), self.ring.field().one()),
        )])
    }

    pub fn to_element(&self, v: &KElem) -> Element {
        v.iter()
            .map(|(s, p)| (self.position(*s), p.clone()))
            .collect()
    }

    pub fn from_element(&self, i: usize, v: &Element) -> KElem {
        v.iter()
            .map(|(k, p)| (self.subsets[i][*k], p.clone()))
            .collect()
    }

    pub fn format(&self, v: &KElem) -> String {
        if v.is_empty() {
            return "0".into();
        }
        let names = self.ring.names();
        let parts: Vec<String> = v
            .iter()
            .map(|(s, p)| {
                let e = exterior::elements(*s)
                    .iter()
                    .map(|j| format!("e{}", j + 1))
                    .collect::<Vec<_>>()
                    .join("∧");
                let e = if e.is_empty() { "1".to_string() } else { e };
                format!("({})*{e}", p.format(names))
            })
            .collect();
        parts.join(" + ")
    }
}
