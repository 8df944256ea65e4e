//! Avramov obstructions for the quotient map `f: R → S = R/𝔞` by a monomial
//! regular sequence, computed through the Tate resolution of `k` over `S`.
//!
//! With `K` the Koszul complex on the variables and `T` the Tate complex,
//! `Tor^R_i(R/M, k) = H_i(K ⊗ R/M)` and `Tor^S_i(R/M, k) = H_i(T ⊗_S R/M)`.
//! The change-of-rings map is induced by the inclusion `K ⊗ S = Λ(e) ⊂ T`,
//! and `Tor^R_1(S, k)·Tor^R_{i-1}(R/M, k)` is spanned by the classes
//! `[z_j ∧ w]` where `d z_j = a_j`. The graded obstruction is
//! `o_i = ker(Tor^R_i / products → Tor^S_i)`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::complex::{Element, GradedFreeComplex};
use crate::error::{Error, Result};
use crate::exterior;
use crate::field::Scalar;
use crate::golod::koszul_homology;
use crate::ideal::{is_transverse, MonomialIdeal};
use crate::koszul::{KElem, KoszulAlgebra};
use crate::linalg::{Echelon, SparseVec};
use crate::matrix::PolyMatrix;
use crate::monomial::Monomial;
use crate::par::par_map;
use crate::poly::Polynomial;
use crate::resolution::Clause;
use crate::ring::Ring;
use crate::strand::{strand_homology, HomologyStrand};

/// Generator `e_S y^{(M)}` of the Tate complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TateGenerator {
    /// Exterior part as a mask over the variables.
    pub exterior: u64,
    /// Divided-power exponents, one per element of the sequence.
    pub divided: Vec<u32>,
}

impl TateGenerator {
    pub fn label(&self) -> String {
        let mut s = String::new();
        if self.exterior != 0 {
            s.push('e');
            s.push_str(&exterior::label(self.exterior));
        }
        for (j, &m) in self.divided.iter().enumerate() {
            match m {
                0 => {}
                1 => {
                    let _ = write!(s, "y{}", j + 1);
                }
                _ => {
                    let _ = write!(s, "y{}^({m})", j + 1);
                }
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

/// The Tate resolution `Λ(e_1..e_n) ⊗ Γ(y_1..y_c)` of `k` over `R/𝔞`,
/// truncated at homological degree `n_max`.
#[derive(Clone, Debug)]
pub struct TateComplex {
    sequence: MonomialIdeal,
    n_max: usize,
    generators: Vec<Vec<TateGenerator>>,
    complex: GradedFreeComplex,
}

/// Certificate for a truncated Tate complex.
#[derive(Clone, Debug, Serialize)]
pub struct TateCertificate {
    pub bound: u32,
    pub valid: Clause,
    pub minimal: Clause,
    /// `H_i = 0` for `1 <= i < n_max` in every strand up to `bound`.
    pub exact: Clause,
    /// `coker d_1 = k`.
    pub residue_field: Clause,
}

impl TateCertificate {
    pub fn pass(&self) -> bool {
        self.valid.pass && self.minimal.pass && self.exact.pass && self.residue_field.pass
    }
}

fn check_sequence(ring: &Ring, a: &MonomialIdeal) -> Result<()> {
    if a.nvars() != ring.nvars() {
        return Err(Error::RingMismatch(
            "sequence and ring disagree on variables".into(),
        ));
    }
    if a.is_unit() {
        return Err(Error::Domain(
            "the sequence generates the unit ideal".into(),
        ));
    }
    let gens = a.gens();
    for (x, m) in gens.iter().enumerate() {
        if gens[..x].iter().any(|n| !n.is_coprime(m)) {
            return Err(Error::Domain(format!(
                "{} and another generator share a variable; only disjoint supports are supported",
                m.format(ring.names())
            )));
        }
    }
    Ok(())
}

/// Exponent vectors of length `c` summing to `w`, descending lex.
fn compositions(w: u32, c: usize) -> Vec<Vec<u32>> {
    if c == 0 {
        return if w == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=w).rev() {
        for mut rest in compositions(w - first, c - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `(i(j), a_j / x_{i(j)})` with `i(j)` the smallest variable dividing `a_j`,
/// so that `z_j = (a_j / x_{i(j)}) e_{i(j)}` has `d z_j = a_j`.
fn cycle_parts(a: &MonomialIdeal) -> Vec<(usize, Monomial)> {
    a.gens()
        .iter()
        .map(|g| {
            let v = g.support().next().expect("generators have positive degree");
            (
                v,
                g.div(&Monomial::var(g.nvars(), v))
                    .expect("the variable divides"),
            )
        })
        .collect()
}

/// Builds the Tate complex of `k` over `R/𝔞` through degree `n_max`, with
/// `d(e_i) = x_i` and `d(y_j^{(m)}) = z_j y_j^{(m-1)}`.
pub fn tate_resolution(ring: &Ring, a: &MonomialIdeal, n_max: usize) -> Result<TateComplex> {
    check_sequence(ring, a)?;
    if n_max < 1 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let n = ring.nvars();
    let c = a.len();
    let ydeg: Vec<u32> = a.gens().iter().map(Monomial::degree).collect();
    let mut generators = Vec::new();
    for deg in 0..=n_max {
        let mut list = Vec::new();
        for w in 0..=deg / 2 {
            let h = deg - 2 * w;
            if h > n {
                continue;
            }
            for s in exterior::subsets(n, h) {
                for m in compositions(w as u32, c) {
                    list.push(TateGenerator {
                        exterior: s,
                        divided: m,
                    });
                }
            }
        }
        generators.push(list);
    }
    let degrees: Vec<Vec<u32>> = generators
        .iter()
        .map(|l| {
            l.iter()
                .map(|g| {
                    g.exterior.count_ones()
                        + g.divided.iter().zip(&ydeg).map(|(m, d)| m * d).sum::<u32>()
                })
                .collect()
        })
        .collect();
    let labels = generators
        .iter()
        .map(|l| l.iter().map(TateGenerator::label).collect())
        .collect();
    let index: Vec<HashMap<&TateGenerator, usize>> = generators
        .iter()
        .map(|l| l.iter().enumerate().map(|(k, g)| (g, k)).collect())
        .collect();
    let z = cycle_parts(a);
    let field = ring.field();
    let mut diffs = Vec::new();
    for deg in 1..=n_max {
        let mut d = PolyMatrix::zeros(generators[deg - 1].len(), generators[deg].len());
        for (col, g) in generators[deg].iter().enumerate() {
            let s = g.exterior;
            for v in exterior::elements(s) {
                let target = TateGenerator {
                    exterior: s & !(1 << v),
                    divided: g.divided.clone(),
                };
                let p = Polynomial::monomial(ring.var(v), field);
                let p = if exterior::removal_sign(s, v) < 0 {
                    p.neg()
                } else {
                    p
                };
                d.set(index[deg - 1][&target], col, p);
            }
            let outer = if s.count_ones() % 2 == 0 { 1 } else { -1 };
            for (j, (v, coef)) in z.iter().enumerate() {
                if g.divided[j] == 0 || s & (1 << v) != 0 {
                    continue;
                }
                let mut divided = g.divided.clone();
                divided[j] -= 1;
                let target = TateGenerator {
                    exterior: s | (1 << v),
                    divided,
                };
                let p = Polynomial::monomial(coef.clone(), field);
                let p = if outer * exterior::wedge_sign(s, 1 << v) < 0 {
                    p.neg()
                } else {
                    p
                };
                d.add_to(index[deg - 1][&target], col, &p);
            }
        }
        diffs.push(d);
    }
    let complex =
        GradedFreeComplex::new(ring.clone(), degrees, diffs, labels)?.over_quotient(a.clone())?;
    Ok(TateComplex {
        sequence: a.clone(),
        n_max,
        generators,
        complex,
    })
}

impl TateComplex {
    pub fn complex(&self) -> &GradedFreeComplex {
        &self.complex
    }

    pub fn sequence(&self) -> &MonomialIdeal {
        &self.sequence
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn generators(&self, i: usize) -> &[TateGenerator] {
        self.generators.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.generators.iter().map(Vec::len).collect()
    }

    /// Checks `d² = 0`, minimality, `coker d_1 = k` and exactness below the
    /// truncation in strands up to `bound` (default: the largest generator
    /// degree plus one).
    pub fn certify(&self, bound: Option<u32>) -> TateCertificate {
        let c = &self.complex;
        let bound = bound.unwrap_or(c.max_generator_degree() + 1);
        let valid = match c.validate() {
            Ok(()) => Clause::ok(),
            Err(v) => Clause::fail(v.to_string()),
        };
        let minimal = match c.first_unit_entry() {
            None => Clause::ok(),
            Some((i, r, col)) => Clause::fail(format!("unit entry at ({r}, {col}) of d_{i}")),
        };
        let mut jobs = Vec::new();
        for i in 1..self.n_max {
            for t in 0..=bound {
                jobs.push((i, t));
            }
        }
        let dims = par_map(&jobs, |&(i, t)| strand_homology(c, None, t, i).dim());
        let exact = match jobs.iter().zip(&dims).find(|(_, d)| **d > 0) {
            None => Clause::ok(),
            Some(((i, t), d)) => Clause::fail(format!("H_{i} has dimension {d} in degree {t}")),
        };
        let mut residue_field = Clause::ok();
        for t in 0..=bound {
            let h0 = strand_homology(c, None, t, 0).dim();
            if h0 != usize::from(t == 0) {
                residue_field = Clause::fail(format!("coker d_1 has dimension {h0} in degree {t}"));
                break;
            }
        }
        TateCertificate {
            bound,
            valid,
            minimal,
            exact,
            residue_field,
        }
    }
}

/// `Σ_{h+2w=n} C(nvars, h)·C(w+c-1, c-1)`.
pub fn tate_rank(nvars: usize, c: usize, n: usize) -> usize {
    let binom = |a: usize, b: usize| -> usize {
        if b > a {
            return 0;
        }
        (0..b).fold(1usize, |acc, k| acc * (a - k) / (k + 1))
    };
    (0..=n / 2)
        .map(|w| {
            let divided = if c == 0 {
                usize::from(w == 0)
            } else {
                binom(w + c - 1, c - 1)
            };
            binom(nvars, n - 2 * w) * divided
        })
        .sum()
}

// ---------------------------------------------------------------------------
// Change of rings

/// Everything needed to compare `Tor^R(R/M, k)` with `Tor^S(R/M, k)`.
struct Pipeline {
    sequence: MonomialIdeal,
    module: MonomialIdeal,
    alg: KoszulAlgebra,
    tate: TateComplex,
    z: Vec<(u32, KElem)>,
}

/// Per-strand results for one homological degree.
#[derive(Clone, Debug, Default)]
struct StrandResult {
    tor_r: usize,
    prod: usize,
    tor_s: usize,
    rank: usize,
    well_defined: bool,
    // rows: images of the Tor^R basis classes in Tor^S coordinates
    map: Vec<Vec<Scalar>>,
}

fn rank_of(vectors: &[Vec<Scalar>]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        let sparse: SparseVec = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k, x.clone()))
            .collect();
        e.insert(sparse);
    }
    e.rank()
}

impl Pipeline {
    fn new(ring: &Ring, a: &MonomialIdeal, m: &MonomialIdeal, n_max: usize) -> Result<Self> {
        check_sequence(ring, a)?;
        if m.nvars() != ring.nvars() {
            return Err(Error::RingMismatch(
                "module ideal and ring disagree on variables".into(),
            ));
        }
        if m.is_zero() || m.is_unit() {
            return Err(Error::Domain(
                "the module ideal must be nonzero and proper".into(),
            ));
        }
        if !m.contains_ideal(a) {
            return Err(Error::Domain(
                "the sequence is not contained in the module ideal".into(),
            ));
        }
        let tate = tate_resolution(ring, a, n_max + 1)?;
        let field = ring.field();
        let z = cycle_parts(a)
            .into_iter()
            .zip(a.gens())
            .map(|((v, coef), g)| {
                (
                    g.degree(),
                    KElem::from([(1u64 << v, Polynomial::monomial(coef, field))]),
                )
            })
            .collect();
        Ok(Pipeline {
            sequence: a.clone(),
            module: m.clone(),
            alg: KoszulAlgebra::new(ring),
            tate,
            z,
        })
    }

    /// Internal degrees beyond which `Tor^S_i(R/M, k)` vanishes: the
    /// Shamash–Eisenbud resolution built from the Taylor resolution of `R/M`
    /// has generators `F_{i-2w} ⊗ y^{(W)}` with `|W| = w`.
    fn bound(&self, i: usize) -> u32 {
        let ymax = self.sequence.max_degree();
        (0..=i / 2)
            .map(|w| {
                let l = i - 2 * w;
                if l > self.module.len() {
                    return 0;
                }
                self.module.lcm_degree_bound(l) + w as u32 * ymax
            })
            .max()
            .unwrap_or(0)
    }

    fn koszul_strand(&self, i: usize, t: u32) -> HomologyStrand {
        strand_homology(self.alg.complex(), Some(&self.module), t, i)
    }

    fn tate_strand(&self, i: usize, t: u32) -> HomologyStrand {
        strand_homology(self.tate.complex(), Some(&self.module), t, i)
    }

    // Λ^i(e) is the first block of T_i, in the same order as K_i.
    fn include(&self, v: &Element) -> Element {
        v.clone()
    }

    fn product_classes(&self, i: usize, t: u32, hk: &HomologyStrand) -> Vec<Element> {
        let mut out = Vec::new();
        if i == 0 {
            return out;
        }
        for (deg, z) in &self.z {
            let Some(tw) = t.checked_sub(*deg) else {
                continue;
            };
            let lower = self.koszul_strand(i - 1, tw);
            for w in lower.representative_elements() {
                let prod = self.alg.wedge(z, &self.alg.from_element(i - 1, &w));
                let prod = self.alg.reduce(&prod, &self.module);
                let el = self.alg.to_element(&prod);
                debug_assert!(hk.basis.coordinates(&el).len() <= hk.basis.len());
                out.push(el);
            }
        }
        out
    }

    fn strand(&self, i: usize, t: u32) -> StrandResult {
        let hk = self.koszul_strand(i, t);
        let ht = self.tate_strand(i, t);
        let to_tate = |el: &Element| ht.class_of(&ht.basis.coordinates(&self.include(el)));
        let map: Vec<Vec<Scalar>> = hk.representative_elements().iter().map(to_tate).collect();
        let products = self.product_classes(i, t, &hk);
        let prod_coords: Vec<Vec<Scalar>> = products
            .iter()
            .map(|el| hk.class_of(&hk.basis.coordinates(el)))
            .collect();
        let well_defined = products
            .iter()
            .all(|el| to_tate(el).iter().all(Scalar::is_zero));
        StrandResult {
            tor_r: hk.dim(),
            prod: rank_of(&prod_coords),
            tor_s: ht.dim(),
            rank: rank_of(&map),
            well_defined,
            map,
        }
    }

    fn degree(&self, i: usize) -> Vec<(u32, StrandResult)> {
        let ts: Vec<u32> = (0..=self.bound(i)).collect();
        let results = par_map(&ts, |&t| self.strand(i, t));
        ts.into_iter().zip(results).collect()
    }
}

/// `dim Tor^S_i(R/M, k)` for `0 <= i <= n_max`, where `S = R/𝔞`.
pub fn tor_over_quotient(
    ring: &Ring,
    a: &MonomialIdeal,
    m: &MonomialIdeal,
    n_max: usize,
) -> Result<Vec<usize>> {
    let p = Pipeline::new(ring, a, m, n_max)?;
    Ok((0..=n_max)
        .map(|i| {
            let ts: Vec<u32> = (0..=p.bound(i)).collect();
            par_map(&ts, |&t| p.tate_strand(i, t).dim())
                .into_iter()
                .sum()
        })
        .collect())
}

/// The map `Tor^R_i(R/M, k) → Tor^S_i(R/M, k)` in one internal degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapBlock {
    pub t: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Image of each source basis class, in target coordinates.
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChangeOfRings {
    pub i: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub blocks: Vec<MapBlock>,
}

/// The change-of-rings map in homological degree `i`, strand by strand.
pub fn change_of_rings_map(
    ring: &Ring,
    a: &MonomialIdeal,
    m: &MonomialIdeal,
    i: usize,
) -> Result<ChangeOfRings> {
    let p = Pipeline::new(ring, a, m, i.max(1))?;
    let mut out = ChangeOfRings {
        i,
        source_dim: 0,
        target_dim: 0,
        rank: 0,
        blocks: Vec::new(),
    };
    for (t, r) in p.degree(i) {
        out.source_dim += r.tor_r;
        out.target_dim += r.tor_s;
        out.rank += r.rank;
        if r.tor_r + r.tor_s > 0 {
            out.blocks.push(MapBlock {
                t,
                source_dim: r.tor_r,
                target_dim: r.tor_s,
                rows: r
                    .map
                    .iter()
                    .map(|row| row.iter().map(ToString::to_string).collect())
                    .collect(),
            });
        }
    }
    Ok(out)
}

/// `Tor^R_1(S, k)·Tor^R_{i-1}(R/M, k)` inside `Tor^R_i(R/M, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductSubspace {
    pub i: usize,
    pub ambient_dim: usize,
    pub dim: usize,
    /// `(t, dim)` for internal degrees where the subspace is nonzero.
    pub by_degree: Vec<(u32, usize)>,
}

pub fn tor_product_subspace(
    ring: &Ring,
    a: &MonomialIdeal,
    m: &MonomialIdeal,
    i: usize,
) -> Result<ProductSubspace> {
    if i == 0 {
        return Err(Error::Domain(
            "the product subspace starts in degree 1".into(),
        ));
    }
    let p = Pipeline::new(ring, a, m, i)?;
    let ts: Vec<u32> = (0..=p.bound(i)).collect();
    let parts = par_map(&ts, |&t| {
        let hk = p.koszul_strand(i, t);
        let coords: Vec<Vec<Scalar>> = p
            .product_classes(i, t, &hk)
            .iter()
            .map(|el| hk.class_of(&hk.basis.coordinates(el)))
            .collect();
        (hk.dim(), rank_of(&coords))
    });
    let ambient_dim = parts.iter().map(|x| x.0).sum();
    let by_degree: Vec<(u32, usize)> = ts
        .iter()
        .zip(&parts)
        .filter(|(_, x)| x.1 > 0)
        .map(|(t, x)| (*t, x.1))
        .collect();
    Ok(ProductSubspace {
        i,
        ambient_dim,
        dim: by_degree.iter().map(|x| x.1).sum(),
        by_degree,
    })
}

/// One row of an obstruction report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionRow {
    pub i: usize,
    pub tor_r: usize,
    pub prod: usize,
    pub tor_s: usize,
    pub rank: usize,
    pub obstruction: usize,
    /// The product subspace maps to zero.
    pub well_defined: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub sequence: Vec<String>,
    pub module: Vec<String>,
    pub n_max: usize,
    pub rows: Vec<ObstructionRow>,
}

impl ObstructionReport {
    pub fn row(&self, i: usize) -> Option<&ObstructionRow> {
        self.rows.iter().find(|r| r.i == i)
    }

    /// First degree with a nonzero obstruction.
    pub fn first_nonzero(&self) -> Option<&ObstructionRow> {
        self.rows.iter().find(|r| r.obstruction > 0)
    }

    pub fn vanishes(&self) -> bool {
        self.first_nonzero().is_none()
    }

    pub fn well_defined(&self) -> bool {
        self.rows.iter().all(|r| r.well_defined)
    }

    /// Aligned `i | torR | prod | torS | rank | o_i` table.
    pub fn render(&self) -> String {
        let header = ["i", "torR", "prod", "torS", "rank", "o_i"];
        let body: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| [r.i, r.tor_r, r.prod, r.tor_s, r.rank, r.obstruction].map(|x| x.to_string()))
            .collect();
        let widths: Vec<usize> = (0..6)
            .map(|k| {
                body.iter()
                    .map(|row| row[k].len())
                    .chain([header[k].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join(" | ")
                + "\n"
        };
        let mut out = line(header.to_vec());
        for row in &body {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        out
    }
}

/// Projective dimension of `R/M`.
pub fn projective_dimension(ring: &Ring, m: &MonomialIdeal) -> Result<usize> {
    let dims = koszul_homology(ring, m)?.dims();
    Ok(dims.iter().rposition(|&d| d > 0).unwrap_or(0))
}

/// Graded obstructions `o_i` for `1 <= i <= n_max`, default `n_max = pd(R/M) + 1`.
pub fn avramov_obstruction(
    ring: &Ring,
    a: &MonomialIdeal,
    m: &MonomialIdeal,
    n_max: Option<usize>,
) -> Result<ObstructionReport> {
    let n_max = match n_max {
        Some(n) => n,
        None => projective_dimension(ring, m)? + 1,
    };
    let p = Pipeline::new(ring, a, m, n_max.max(1))?;
    let degrees: Vec<usize> = (1..=n_max).collect();
    let rows = degrees
        .iter()
        .map(|&i| {
            let parts = p.degree(i);
            let mut row = ObstructionRow {
                i,
                tor_r: 0,
                prod: 0,
                tor_s: 0,
                rank: 0,
                obstruction: 0,
                well_defined: true,
            };
            for (_, r) in parts {
                row.tor_r += r.tor_r;
                row.prod += r.prod;
                row.tor_s += r.tor_s;
                row.rank += r.rank;
                row.well_defined &= r.well_defined;
            }
            // once the products map to zero, the quotient map has the rank of the full map
            row.obstruction = row.tor_r - row.prod - row.rank;
            row
        })
        .collect();
    let names = ring.names();
    Ok(ObstructionReport {
        sequence: a.to_strings(names),
        module: m.to_strings(names),
        n_max,
        rows,
    })
}

/// Certificate that `Tor^R_i(R/IJ, k) → Tor^S_i(R/IJ, k)` is injective.
#[derive(Clone, Debug, Serialize)]
pub struct InjectivityCertificate {
    pub report: ObstructionReport,
    /// Degrees `2 <= i <= n_max` where the map is not injective.
    pub failures: Vec<usize>,
    pub pass: bool,
}

/// Checks injectivity of the change-of-rings map for `R/IJ` in degrees
/// `2..=n_max`, for transverse `I, J` and a regular sequence `𝔞 ⊆ IJ`.
pub fn verify_injectivity(
    ring: &Ring,
    a: &MonomialIdeal,
    i_ideal: &MonomialIdeal,
    j_ideal: &MonomialIdeal,
    n_max: usize,
) -> Result<InjectivityCertificate> {
    if !is_transverse(i_ideal, j_ideal)? {
        return Err(Error::Domain("the ideals are not transverse".into()));
    }
    let ij = i_ideal.product(j_ideal)?;
    if !ij.contains_ideal(a) {
        return Err(Error::Domain("the sequence is not contained in IJ".into()));
    }
    let report = avramov_obstruction(ring, a, &ij, Some(n_max))?;
    let failures: Vec<usize> = report
        .rows
        .iter()
        .filter(|r| r.i >= 2 && r.rank != r.tor_r)
        .map(|r| r.i)
        .collect();
    let pass = failures.is_empty() && report.well_defined();
    Ok(InjectivityCertificate {
        report,
        failures,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn xy() -> Ring {
        Ring::new(vec!["x".into(), "y".into()], Field::Rational).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::parse(r, gens).unwrap()
    }

    #[test]
    fn rank_formula() {
        assert_eq!(tate_rank(2, 1, 0), 1);
        assert_eq!(tate_rank(2, 1, 3), 2);
        assert_eq!(tate_rank(4, 0, 2), 6);
        assert_eq!(tate_rank(4, 2, 4), 1 + 6 * 2 + 3);
    }

    #[test]
    fn tate_ranks_hypersurfaces() {
        let r = xy();
        for a in [["x^2"], ["x*y"]] {
            let t = tate_resolution(&r, &ideal(&r, &a), 6).unwrap();
            assert_eq!(t.ranks(), vec![1, 2, 2, 2, 2, 2, 2]);
            let cert = t.certify(None);
            assert!(cert.pass(), "{a:?}: {cert:?}");
        }
    }

    #[test]
    fn tate_without_sequence_is_koszul() {
        let r = Ring::standard(3, Field::Rational);
        let t = tate_resolution(&r, &MonomialIdeal::zero(3), 3).unwrap();
        assert_eq!(t.ranks(), vec![1, 3, 3, 1]);
        assert!(t.certify(None).pass());
    }

    #[test]
    fn tate_with_a_linear_element_is_not_minimal() {
        // the divided-power differential has the unit entry x/x = 1
        let r = xy();
        let t = tate_resolution(&r, &ideal(&r, &["x"]), 4).unwrap();
        let cert = t.certify(None);
        assert!(!cert.minimal.pass);
        assert!(
            cert.valid.pass && cert.exact.pass && cert.residue_field.pass,
            "{cert:?}"
        );
    }

    #[test]
    fn tate_rejects_overlap() {
        let r = xy();
        assert!(tate_resolution(&r, &ideal(&r, &["x^2", "x*y"]), 3).is_err());
    }

    #[test]
    fn tate_codimension_two() {
        let r = Ring::standard(4, Field::Rational);
        let a = ideal(&r, &["x1^2", "x4^2"]);
        let t = tate_resolution(&r, &a, 5).unwrap();
        let want: Vec<usize> = (0..=5).map(|n| tate_rank(4, 2, n)).collect();
        assert_eq!(t.ranks(), want);
        assert!(t.certify(None).pass());
    }

    #[test]
    fn tor_over_hypersurface() {
        let r = xy();
        let a = ideal(&r, &["x*y"]);
        assert_eq!(
            tor_over_quotient(&r, &a, &a, 4).unwrap(),
            vec![1, 0, 0, 0, 0]
        );
        assert_eq!(
            tor_over_quotient(&r, &a, &ideal(&r, &["x", "y"]), 4).unwrap(),
            vec![1, 2, 2, 2, 2]
        );
        assert_eq!(
            tor_over_quotient(&r, &a, &ideal(&r, &["x"]), 4).unwrap(),
            vec![1, 1, 1, 1, 1]
        );
    }

    #[test]
    fn change_of_rings_over_hypersurface() {
        let r = xy();
        let a = ideal(&r, &["x*y"]);
        let m = ideal(&r, &["x", "y"]);
        let one = change_of_rings_map(&r, &a, &m, 1).unwrap();
        assert_eq!((one.source_dim, one.target_dim, one.rank), (2, 2, 2));
        let two = change_of_rings_map(&r, &a, &m, 2).unwrap();
        assert_eq!((two.source_dim, two.target_dim, two.rank), (1, 2, 1));
        let zero = change_of_rings_map(&r, &a, &m, 0).unwrap();
        assert_eq!((zero.source_dim, zero.target_dim, zero.rank), (1, 1, 1));
    }

    #[test]
    fn product_subspace_of_flagship() {
        let r = Ring::standard(4, Field::Rational);
        let a = ideal(&r, &["x1*x3"]);
        let ij = ideal(&r, &["x1", "x2"])
            .product(&ideal(&r, &["x3", "x4"]))
            .unwrap();
        assert_eq!(tor_product_subspace(&r, &a, &ij, 1).unwrap().dim, 1);
        for i in 2..=4 {
            assert_eq!(tor_product_subspace(&r, &a, &ij, i).unwrap().dim, 0);
        }
    }

    #[test]
    fn product_subspace_of_complete_intersection() {
        let r = Ring::standard(3, Field::Rational);
        let a = ideal(&r, &["x1^2", "x2*x3"]);
        for i in 1..=2 {
            let s = tor_product_subspace(&r, &a, &a, i).unwrap();
            assert_eq!(s.dim, s.ambient_dim);
            assert!(s.dim > 0);
        }
    }

    #[test]
    fn obstruction_of_the_sequence_itself_vanishes() {
        let r = Ring::standard(3, Field::Rational);
        let a = ideal(&r, &["x1^2", "x2*x3"]);
        let rep = avramov_obstruction(&r, &a, &a, None).unwrap();
        assert!(rep.vanishes() && rep.well_defined());
        assert_eq!(rep.n_max, 3);
    }

    #[test]
    fn flagship_injectivity() {
        let r = Ring::standard(4, Field::Rational);
        let cert = verify_injectivity(
            &r,
            &ideal(&r, &["x1*x3"]),
            &ideal(&r, &["x1", "x2"]),
            &ideal(&r, &["x3", "x4"]),
            4,
        )
        .unwrap();
        assert!(cert.pass, "{}", cert.report.render());
        assert!(cert.report.vanishes());
    }

    #[test]
    fn injectivity_for_two_variables() {
        let r = xy();
        let cert = verify_injectivity(
            &r,
            &ideal(&r, &["x*y"]),
            &ideal(&r, &["x"]),
            &ideal(&r, &["y"]),
            3,
        )
        .unwrap();
        assert!(cert.pass);
        let tors: Vec<usize> = cert.report.rows.iter().map(|r| r.tor_r).collect();
        assert_eq!(tors, vec![1, 0, 0]);
        assert!(verify_injectivity(
            &r,
            &ideal(&r, &["x*y"]),
            &ideal(&r, &["x", "y"]),
            &ideal(&r, &["y"]),
            3
        )
        .is_err());
    }

    #[test]
    fn render_is_aligned() {
        let r = xy();
        let a = ideal(&r, &["x*y"]);
        let rep = avramov_obstruction(&r, &a, &ideal(&r, &["x", "y"]), Some(2)).unwrap();
        let text = rep.render();
        assert!(
            text.starts_with("i | torR | prod | torS | rank | o_i\n"),
            "{text}"
        );
        assert_eq!(text.lines().count(), 3);
    }
}
