//! Koszul and Taylor complexes, minimization, comparison maps, and
//! certification of free resolutions of monomial quotients.

use std::collections::HashMap;

use serde::Serialize;

use crate::complex::{add_entry, unit_entry, Element, GradedFreeComplex};
use crate::error::{Error, Result};
use crate::exterior;
use crate::ideal::MonomialIdeal;
use crate::linalg::{self, SparseVec};
use crate::matrix::PolyMatrix;
use crate::monomial::Monomial;
use crate::par::par_map;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::strand::{effective_quotient, strand_homology, strand_matrix, StrandBasis};

/// The Koszul complex on homogeneous elements of positive degree, with
/// `d(e_{j1}∧…∧e_{jr}) = Σ_l (-1)^{l+1} a_{jl} e_{…ĵl…}`.
pub fn koszul_complex(ring: &Ring, elements: &[Polynomial]) -> Result<GradedFreeComplex> {
    let mut degs = Vec::with_capacity(elements.len());
    for a in elements {
        match a.degree() {
            Some(d) if d > 0 => degs.push(d),
            _ => {
                return Err(Error::NotHomogeneous(format!(
                    "{} is not homogeneous of positive degree",
                    a.format(ring.names())
                )))
            }
        }
    }
    let c = elements.len();
    exterior_complex(
        ring,
        c,
        |s| exterior::elements(s).iter().map(|&j| degs[j]).sum(),
        |_, j| elements[j].clone(),
    )
}

/// The Taylor resolution of `R/I`: generators `e_S` of degree `deg lcm_S`
/// with `d(e_S) = Σ_{j∈S} ± (lcm_S / lcm_{S∖j}) e_{S∖j}`.
pub fn taylor_complex(ring: &Ring, ideal: &MonomialIdeal) -> Result<GradedFreeComplex> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::Domain(
            "the Taylor complex needs a nonzero proper ideal".into(),
        ));
    }
    if ideal.nvars() != ring.nvars() {
        return Err(Error::RingMismatch(
            "ideal and ring disagree on variables".into(),
        ));
    }
    let gens = ideal.gens();
    let r = gens.len();
    let mut table = HashMap::new();
    for k in 0..=r {
        for s in exterior::subsets(r, k) {
            let lcm = exterior::elements(s)
                .iter()
                .fold(Monomial::one(ring.nvars()), |a, &j| {
                    a.lcm(&gens[j]).expect("same ring")
                });
            table.insert(s, lcm);
        }
    }
    let field = ring.field();
    exterior_complex(
        ring,
        r,
        |s| table[&s].degree(),
        |s, j| {
            let q = table[&s]
                .div(&table[&(s & !(1 << j))])
                .expect("lcm of a subset divides");
            Polynomial::monomial(q, field)
        },
    )
}

// Shared shape of Koszul and Taylor: basis e_S over subsets of 0..r, with
// d(e_S) = Σ_{j∈S} (-1)^{pos(j)} coef(S, j) e_{S∖j}.
fn exterior_complex(
    ring: &Ring,
    r: usize,
    degree: impl Fn(u64) -> u32,
    coef: impl Fn(u64, usize) -> Polynomial,
) -> Result<GradedFreeComplex> {
    let all: Vec<Vec<u64>> = (0..=r).map(|k| exterior::subsets(r, k)).collect();
    let degrees = all
        .iter()
        .map(|l| l.iter().map(|&s| degree(s)).collect())
        .collect();
    let labels = all
        .iter()
        .map(|l| l.iter().map(|&s| exterior::label(s)).collect())
        .collect();
    let mut diffs = Vec::new();
    for k in 1..=r {
        let below = exterior::index_of(&all[k - 1]);
        let mut d = PolyMatrix::zeros(all[k - 1].len(), all[k].len());
        for (col, &s) in all[k].iter().enumerate() {
            for j in exterior::elements(s) {
                let c = coef(s, j);
                let c = if exterior::removal_sign(s, j) < 0 {
                    c.neg()
                } else {
                    c
                };
                d.set(below[&(s & !(1 << j))], col, c);
            }
        }
        diffs.push(d);
    }
    GradedFreeComplex::new(ring.clone(), degrees, diffs, labels)
}

/// Cancels unit entries until the complex is minimal. Entries are scanned in
/// (homological degree, row, column) order; each cancellation of a unit `u`
/// at `(r, c)` of `d_i` replaces `d_i` by `ε - γ u⁻¹ δ` and deletes row `c`
/// of `d_{i+1}` and column `r` of `d_{i-1}`.
pub fn minimize_complex(c: &GradedFreeComplex) -> Result<GradedFreeComplex> {
    if let Err(v) = c.validate() {
        return Err(Error::InvalidComplex(v.to_string()));
    }
    let mut out = c.clone();
    let base = c.base().cloned();
    let len = out.length();
    {
        let (degrees, labels, diffs) = out.parts_mut();
        for i in 1..=len {
            while let Some((r, col)) = unit_entry(&diffs[i - 1]) {
                let d = &diffs[i - 1];
                let u = d.get(r, col).expect("unit entry").clone();
                let u_inv = u
                    .constant_term()
                    .and_then(|x| x.inv())
                    .expect("homogeneous unit entry");
                let gamma: Vec<(usize, Polynomial)> = d
                    .column(col)
                    .iter()
                    .filter(|(k, _)| **k != r)
                    .map(|(k, p)| (*k, p.scale(&u_inv)))
                    .collect();
                let mut next = d.clone();
                for j in 0..d.ncols() {
                    if j == col {
                        continue;
                    }
                    let Some(delta) = d.get(r, j) else { continue };
                    for (k, g) in &gamma {
                        let mut upd = g.mul(delta).neg();
                        if let Some(b) = &base {
                            upd = b.reduce(&upd);
                        }
                        next.add_to(*k, j, &upd);
                    }
                }
                diffs[i - 1] = next.delete(&[r], &[col]);
                if i < diffs.len() {
                    diffs[i] = diffs[i].delete(&[col], &[]);
                }
                if i >= 2 {
                    diffs[i - 2] = diffs[i - 2].delete(&[], &[r]);
                }
                degrees[i].remove(col);
                labels[i].remove(col);
                degrees[i - 1].remove(r);
                labels[i - 1].remove(r);
            }
        }
    }
    out.retrim();
    Ok(out)
}

/// A chain map given by one matrix per homological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub maps: Vec<PolyMatrix>,
}

impl ChainMap {
    /// Image of an element of `source_i`.
    pub fn apply(&self, i: usize, v: &Element) -> Element {
        let mut out = Element::new();
        let Some(m) = self.maps.get(i) else {
            return out;
        };
        for (j, c) in v {
            for (r, p) in m.column(*j) {
                add_entry(&mut out, *r, &p.mul(c));
            }
        }
        out
    }

    /// Checks `d^T φ_i = φ_{i-1} d^S` exactly, modulo the target's base.
    pub fn is_chain_map(&self, source: &GradedFreeComplex, target: &GradedFreeComplex) -> bool {
        for i in 1..self.maps.len() {
            for g in 0..source.rank(i) {
                let e = Element::from([(
                    g,
                    Polynomial::constant(source.ring().nvars(), source.ring().field().one()),
                )]);
                let lhs = target.apply(i, &self.apply(i, &e));
                let rhs = self.apply(i - 1, &source.apply(i, &e));
                let mut diff = lhs;
                for (k, p) in rhs {
                    add_entry(&mut diff, k, &p.neg());
                }
                if diff.values().any(|p| !target.reduce(p).is_zero()) {
                    return false;
                }
            }
        }
        true
    }
}

/// Lifts `phi0: source_0 -> target_0` to a chain map by solving each
/// internal-degree strand exactly, choosing the canonical solution.
pub fn lift_comparison_map(
    source: &GradedFreeComplex,
    target: &GradedFreeComplex,
    phi0: &PolyMatrix,
) -> Result<ChainMap> {
    source.ring().check_same(target.ring())?;
    if phi0.ncols() != source.rank(0) || phi0.nrows() != target.rank(0) {
        return Err(Error::Dimension {
            expected: source.rank(0),
            found: phi0.ncols(),
        });
    }
    let q = effective_quotient(target, None);
    let nvars = target.ring().nvars();
    let one = Polynomial::constant(nvars, target.ring().field().one());
    let mut maps = vec![phi0.clone()];
    let mut cache: HashMap<(usize, u32), (StrandBasis, StrandBasis, Vec<SparseVec>)> =
        HashMap::new();
    for i in 1..=source.length() {
        let prev = ChainMap { maps: maps.clone() };
        let mut phi = PolyMatrix::zeros(target.rank(i), source.rank(i));
        for g in 0..source.rank(i) {
            let t = source.degrees(i)[g];
            let dg = source.apply(i, &Element::from([(g, one.clone())]));
            let rhs: Element = prev
                .apply(i - 1, &dg)
                .into_iter()
                .filter_map(|(k, p)| {
                    let p = target.reduce(&p);
                    (!p.is_zero()).then_some((k, p))
                })
                .collect();
            if rhs.is_empty() {
                continue;
            }
            if i > target.length() {
                return Err(Error::NotExact {
                    homological: i - 1,
                    degree: t,
                });
            }
            let (src, tgt, cols) = cache.entry((i, t)).or_insert_with(|| {
                let src = StrandBasis::new(target.degrees(i), nvars, q.as_ref(), t);
                let tgt = StrandBasis::new(target.degrees(i - 1), nvars, q.as_ref(), t);
                let cols = strand_matrix(target, q.as_ref(), i, &src, &tgt);
                (src, tgt, cols)
            });
            let b = tgt.coordinates(&rhs);
            let rows = linalg::transpose(tgt.len(), cols);
            let field = target.ring().field();
            let mut dense = vec![field.zero(); tgt.len()];
            for (k, x) in &b {
                dense[*k] = x.clone();
            }
            let x = linalg::solve(src.len(), &rows, &dense).ok_or(Error::NotExact {
                homological: i - 1,
                degree: t,
            })?;
            for (r, p) in src.element(&x) {
                phi.set(r, g, p);
            }
        }
        maps.push(phi);
    }
    Ok(ChainMap { maps })
}

/// Pass/fail of one certificate clause with the first failure, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Clause {
    pub(crate) fn ok() -> Self {
        Clause {
            pass: true,
            detail: None,
        }
    }

    pub(crate) fn fail(detail: String) -> Self {
        Clause {
            pass: false,
            detail: Some(detail),
        }
    }
}

/// Certificate that a complex resolves `R/I`.
#[derive(Clone, Debug, Serialize)]
pub struct ResolutionCertificate {
    pub bound: u32,
    pub valid: Clause,
    /// `H_i = 0` in every strand `t <= bound`, `1 <= i <= length`.
    pub exact: Clause,
    /// `coker d_1` has the Hilbert function of `R/I` up to the bound.
    pub cokernel: Clause,
    /// Betti numbers agree with the minimized Taylor resolution.
    pub taylor_oracle: Clause,
}

impl ResolutionCertificate {
    pub fn pass(&self) -> bool {
        self.valid.pass && self.exact.pass && self.cokernel.pass && self.taylor_oracle.pass
    }
}

/// Generator count above which the Taylor oracle is not attempted.
pub const TAYLOR_ORACLE_LIMIT: usize = 14;

/// Certifies that `c` is a free resolution of `R/ideal`. The strand checks
/// run up to `bound`, defaulting to the largest generator degree plus two.
pub fn verify_resolution(
    c: &GradedFreeComplex,
    ideal: &MonomialIdeal,
    bound: Option<u32>,
) -> Result<ResolutionCertificate> {
    let ring = c.ring();
    if ideal.nvars() != ring.nvars() {
        return Err(Error::RingMismatch(
            "ideal and complex disagree on variables".into(),
        ));
    }
    let bound = bound.unwrap_or(c.max_generator_degree() + 2);
    let valid = match c.validate() {
        Ok(()) => Clause::ok(),
        Err(v) => Clause::fail(v.to_string()),
    };
    let mut jobs = Vec::new();
    for i in 1..=c.length() {
        for t in 0..=bound {
            jobs.push((i, t));
        }
    }
    let dims = par_map(&jobs, |&(i, t)| strand_homology(c, None, t, i).dim());
    let exact = match jobs.iter().zip(&dims).find(|(_, d)| **d > 0) {
        None => Clause::ok(),
        Some(((i, t), d)) => Clause::fail(format!("H_{i} has dimension {d} in degree {t}")),
    };
    let mut cokernel = Clause::ok();
    for t in 0..=bound {
        let h0 = strand_homology(c, None, t, 0).dim();
        let want = ideal.degree_basis(t).len();
        if c.rank(0) != 1 || h0 != want {
            cokernel = Clause::fail(format!(
                "coker d_1 has dimension {h0} in degree {t}, R/I has {want}"
            ));
            break;
        }
    }
    let taylor_oracle = if !valid.pass {
        Clause::fail("complex is invalid".into())
    } else if ideal.is_zero() || ideal.is_unit() {
        Clause::fail("ideal must be nonzero and proper".into())
    } else if ideal.len() > TAYLOR_ORACLE_LIMIT {
        Clause::fail(format!(
            "{} generators exceed the Taylor oracle limit",
            ideal.len()
        ))
    } else {
        let mine = minimize_complex(c)?.graded_ranks();
        let oracle = minimize_complex(&taylor_complex(ring, ideal)?)?.graded_ranks();
        if mine == oracle {
            Clause::ok()
        } else {
            Clause::fail(format!(
                "Betti totals {:?} vs Taylor {:?}",
                mine.totals(),
                oracle.totals()
            ))
        }
    };
    Ok(ResolutionCertificate {
        bound,
        valid,
        exact,
        cokernel,
        taylor_oracle,
    })
}
