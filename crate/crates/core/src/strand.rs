//! Fixed internal-degree slices of a graded complex, where everything is a
//! finite-dimensional vector space and homology is exact linear algebra.

use std::collections::HashMap;

use crate::complex::{Element, GradedFreeComplex};
use crate::field::Field;
use crate::ideal::MonomialIdeal;
use crate::linalg::{self, Echelon, SparseVec};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// The quotient a strand is taken over: the complex's own base plus `extra`.
pub fn effective_quotient(
    c: &GradedFreeComplex,
    extra: Option<&MonomialIdeal>,
) -> Option<MonomialIdeal> {
    match (c.base(), extra) {
        (None, None) => None,
        (Some(b), None) => Some(b.clone()),
        (None, Some(q)) => Some(q.clone()),
        (Some(b), Some(q)) => Some(b.sum(q).expect("same ring")),
    }
}

/// Basis `(generator, monomial)` of `(F_i ⊗ R/Q)_t`: generators in order,
/// monomials of degree `t - deg g` outside `Q` in descending lex order.
#[derive(Clone, Debug, Default)]
pub struct StrandBasis {
    elems: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl StrandBasis {
    pub fn new(degrees: &[u32], nvars: usize, q: Option<&MonomialIdeal>, t: u32) -> Self {
        let mut cache: HashMap<u32, Vec<Monomial>> = HashMap::new();
        let mut elems = Vec::new();
        for (g, &d) in degrees.iter().enumerate() {
            if d > t {
                continue;
            }
            let ms = cache.entry(t - d).or_insert_with(|| match q {
                Some(q) => q.degree_basis(t - d),
                None => Monomial::all_of_degree(nvars, t - d),
            });
            for m in ms.iter() {
                elems.push((g, m.clone()));
            }
        }
        let index = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, e)| (e, k))
            .collect();
        StrandBasis { elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[(usize, Monomial)] {
        &self.elems
    }

    pub fn position(&self, g: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(g, m.clone())).copied()
    }

    /// Coordinates of a homogeneous element of internal degree `t`. Terms
    /// outside the basis (those in the quotient) are dropped.
    pub fn coordinates(&self, v: &Element) -> SparseVec {
        linalg::from_entries(v.iter().flat_map(|(g, p)| {
            p.terms()
                .filter_map(move |(m, c)| self.position(*g, m).map(|k| (k, c.clone())))
        }))
    }

    pub fn element(&self, v: &[(usize, crate::field::Scalar)]) -> Element {
        let mut out = Element::new();
        for (k, c) in v {
            let (g, m) = &self.elems[*k];
            crate::complex::add_entry(&mut out, *g, &Polynomial::term(m.clone(), c.clone()));
        }
        out
    }
}

/// Columns of `d_i` restricted to degree-`t` strands.
pub fn strand_matrix(
    c: &GradedFreeComplex,
    q: Option<&MonomialIdeal>,
    i: usize,
    src: &StrandBasis,
    tgt: &StrandBasis,
) -> Vec<SparseVec> {
    let Some(d) = c.differential(i) else {
        return vec![Vec::new(); src.len()];
    };
    src.elems
        .iter()
        .map(|(g, m)| {
            let mut entries = Vec::new();
            for (r, p) in d.column(*g) {
                for (n, coef) in p.terms() {
                    let prod = n.mul(m);
                    if q.is_some_and(|q| q.contains(&prod)) {
                        continue;
                    }
                    if let Some(k) = tgt.position(*r, &prod) {
                        entries.push((k, coef.clone()));
                    }
                }
            }
            linalg::from_entries(entries)
        })
        .collect()
}

/// All homological degrees of one internal-degree slice.
#[derive(Clone, Debug)]
pub struct StrandComplex {
    pub t: u32,
    pub bases: Vec<StrandBasis>,
    /// `diffs[i - 1]` holds the columns of `d_i`.
    pub diffs: Vec<Vec<SparseVec>>,
}

impl StrandComplex {
    pub fn new(c: &GradedFreeComplex, extra: Option<&MonomialIdeal>, t: u32) -> Self {
        let q = effective_quotient(c, extra);
        let nvars = c.ring().nvars();
        let bases: Vec<StrandBasis> = (0..=c.length())
            .map(|i| StrandBasis::new(c.degrees(i), nvars, q.as_ref(), t))
            .collect();
        let diffs = (1..=c.length())
            .map(|i| strand_matrix(c, q.as_ref(), i, &bases[i], &bases[i - 1]))
            .collect();
        StrandComplex { t, bases, diffs }
    }

    /// Whether consecutive scalar matrices compose to zero.
    pub fn is_complex(&self) -> bool {
        for i in 2..=self.diffs.len() {
            for col in &self.diffs[i - 1] {
                let mut acc: SparseVec = Vec::new();
                for (k, x) in col {
                    acc = linalg::axpy(&acc, x, &self.diffs[i - 2][*k]);
                }
                if !acc.is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Homology of one strand in one homological degree, with canonical
/// representatives.
#[derive(Clone, Debug)]
pub struct HomologyStrand {
    pub i: usize,
    pub t: u32,
    pub basis: StrandBasis,
    boundaries: Echelon,
    /// Cycle representatives in reduced echelon form, with zeros at every
    /// boundary pivot.
    pub representatives: Vec<SparseVec>,
}

impl HomologyStrand {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_boundary(&self, v: &SparseVec) -> bool {
        self.boundaries.contains(v)
    }

    /// Coordinates of the class of a cycle in terms of the representatives.
    pub fn class_of(&self, v: &SparseVec) -> Vec<crate::field::Scalar> {
        let w = self.boundaries.reduce(v.clone());
        self.representatives
            .iter()
            .map(|r| {
                let p = r[0].0;
                w.iter()
                    .find(|(k, _)| *k == p)
                    .map(|(_, x)| x.clone())
                    .unwrap_or_else(|| r[0].1.field().zero())
            })
            .collect()
    }

    pub fn representative_elements(&self) -> Vec<Element> {
        self.representatives
            .iter()
            .map(|r| self.basis.element(r))
            .collect()
    }
}

/// `H_i((C ⊗ R/Q)_t)` where `Q` is the complex's base plus `extra`.
pub fn strand_homology(
    c: &GradedFreeComplex,
    extra: Option<&MonomialIdeal>,
    t: u32,
    i: usize,
) -> HomologyStrand {
    let q = effective_quotient(c, extra);
    let q = q.as_ref();
    let nvars = c.ring().nvars();
    let field = c.ring().field();
    let basis = StrandBasis::new(c.degrees(i), nvars, q, t);
    let kernel = if i == 0 || basis.is_empty() {
        unit_vectors(field, basis.len())
    } else {
        let below = StrandBasis::new(c.degrees(i - 1), nvars, q, t);
        let cols = strand_matrix(c, q, i, &basis, &below);
        linalg::column_reduce_in(field, below.len(), &cols).kernel
    };
    let mut boundaries = Echelon::new();
    if i < c.length() {
        let above = StrandBasis::new(c.degrees(i + 1), nvars, q, t);
        for col in strand_matrix(c, q, i + 1, &above, &basis) {
            boundaries.insert(col);
        }
    }
    let boundaries = boundaries.into_rref();
    let mut reps = Echelon::new();
    for k in kernel {
        reps.insert(boundaries.reduce(k));
    }
    HomologyStrand {
        i,
        t,
        basis,
        boundaries,
        representatives: reps.into_rref().into_rows(),
    }
}

fn unit_vectors(field: Field, n: usize) -> Vec<SparseVec> {
    (0..n).map(|k| vec![(k, field.one())]).collect()
}
