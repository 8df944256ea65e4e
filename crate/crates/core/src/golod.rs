//! Koszul homology of monomial quotients, the Künneth-type isomorphism for
//! transverse products, the trivial Massey operation on `K ⊗ R/IJ`, and the
//! resulting minimal resolution of the residue field over `R/IJ`.

use std::collections::HashMap;

use serde::Serialize;

use crate::complex::GradedFreeComplex;
use crate::error::{Error, Result};
use crate::exterior;
use crate::ideal::{is_transverse, MonomialIdeal};
use crate::koszul::{KElem, KoszulAlgebra};
use crate::linalg;
use crate::matrix::PolyMatrix;
use crate::par::par_map;
use crate::poly::Polynomial;
use crate::resolution::{minimize_complex, taylor_complex, Clause};
use crate::ring::Ring;
use crate::strand::{strand_homology, HomologyStrand};

/// A basis class of `H_i(K ⊗ R/I)` in internal degree `t`.
#[derive(Clone, Debug)]
pub struct KoszulClass {
    pub i: usize,
    pub t: u32,
    pub representative: KElem,
    pub label: String,
}

/// A basis of `H_{≥1}(K ⊗ R/I)`, ordered by (i, t, echelon position).
#[derive(Clone, Debug)]
pub struct KoszulHomology {
    pub ideal: MonomialIdeal,
    pub nvars: usize,
    pub classes: Vec<KoszulClass>,
}

impl KoszulHomology {
    /// `dims()[i] = dim H_i`, with `dims()[0] = 1` for `H_0 = k`.
    pub fn dims(&self) -> Vec<usize> {
        let mut out = vec![0; self.nvars + 1];
        out[0] = 1;
        for c in &self.classes {
            out[c.i] += 1;
        }
        out
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims().get(i).copied().unwrap_or(0)
    }

    /// Nonzero `dim H_i` in internal degree `t`.
    pub fn graded_dims(&self) -> Vec<((usize, u32), usize)> {
        let mut map = std::collections::BTreeMap::new();
        for c in &self.classes {
            *map.entry((c.i, c.t)).or_insert(0) += 1;
        }
        map.into_iter().collect()
    }
}

fn check_proper(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::Domain("need a nonzero proper ideal".into()));
    }
    Ok(())
}

/// A basis of the Koszul homology `H_{≥1}(R/I)` with canonical cycle
/// representatives. Internal degrees are scanned up to the Taylor bound
/// `deg lcm` of `i` generators, beyond which `H_i` vanishes.
pub fn koszul_homology(ring: &Ring, ideal: &MonomialIdeal) -> Result<KoszulHomology> {
    check_proper(ideal)?;
    if ideal.nvars() != ring.nvars() {
        return Err(Error::RingMismatch(
            "ideal and ring disagree on variables".into(),
        ));
    }
    let alg = KoszulAlgebra::new(ring);
    let mut jobs = Vec::new();
    for i in 1..=ring.nvars() {
        for t in i as u32..=ideal.lcm_degree_bound(i) {
            jobs.push((i, t));
        }
    }
    let strands = par_map(&jobs, |&(i, t)| {
        strand_homology(alg.complex(), Some(ideal), t, i)
    });
    let mut classes = Vec::new();
    for h in strands {
        for (k, rep) in h.representative_elements().iter().enumerate() {
            classes.push(KoszulClass {
                i: h.i,
                t: h.t,
                representative: alg.from_element(h.i, rep),
                label: format!("H{}[{}]#{}", h.i, h.t, k),
            });
        }
    }
    Ok(KoszulHomology {
        ideal: ideal.clone(),
        nvars: ring.nvars(),
        classes,
    })
}

/// Homology strands of `K ⊗ R/Q`, computed on demand.
struct StrandCache<'a> {
    alg: &'a KoszulAlgebra,
    q: &'a MonomialIdeal,
    strands: HashMap<(usize, u32), HomologyStrand>,
}

impl<'a> StrandCache<'a> {
    fn new(alg: &'a KoszulAlgebra, q: &'a MonomialIdeal) -> Self {
        StrandCache {
            alg,
            q,
            strands: HashMap::new(),
        }
    }

    fn get(&mut self, i: usize, t: u32) -> &HomologyStrand {
        let (alg, q) = (self.alg, self.q);
        self.strands
            .entry((i, t))
            .or_insert_with(|| strand_homology(alg.complex(), Some(q), t, i))
    }

    fn coordinates(&mut self, i: usize, t: u32, v: &KElem) -> Vec<crate::field::Scalar> {
        let el = self.alg.to_element(v);
        let h = self.get(i, t);
        let vec = h.basis.coordinates(&el);
        h.class_of(&vec)
    }

    fn is_boundary(&mut self, i: usize, t: u32, v: &KElem) -> bool {
        let el = self.alg.to_element(v);
        let h = self.get(i, t);
        let vec = h.basis.coordinates(&el);
        h.is_boundary(&vec)
    }
}

/// Dimension bookkeeping of the map `⊕ H_i(R/I) ⊗ H_j(R/J) → H_n(R/IJ)`
/// in one homological degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunnethDegree {
    pub n: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub iso: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KunnethCertificate {
    pub degrees: Vec<KunnethDegree>,
    pub pass: bool,
}

/// Builds `[z_1] ⊗ [z_2] ↦ [z_1 ∧ d(z_2)]` strand by strand and checks
/// that it is bijective in every homological degree.
pub fn kunneth_map(
    ring: &Ring,
    i_ideal: &MonomialIdeal,
    j_ideal: &MonomialIdeal,
) -> Result<KunnethCertificate> {
    if !is_transverse(i_ideal, j_ideal)? {
        return Err(Error::Domain("ideals are not transverse".into()));
    }
    let alg = KoszulAlgebra::new(ring);
    let hi = koszul_homology(ring, i_ideal)?;
    let hj = koszul_homology(ring, j_ideal)?;
    let prod = i_ideal.product(j_ideal)?;
    let hij = koszul_homology(ring, &prod)?;
    let mut cache = StrandCache::new(&alg, &prod);
    let mut degrees = Vec::new();
    let n_vars = ring.nvars();
    for n in 1..=n_vars {
        // columns grouped by internal degree, where the map is block diagonal
        let mut by_t: HashMap<u32, Vec<Vec<crate::field::Scalar>>> = HashMap::new();
        let mut source_dim = 0;
        for a in &hi.classes {
            for b in &hj.classes {
                if a.i + b.i != n + 1 {
                    continue;
                }
                source_dim += 1;
                let img = alg.reduce(
                    &alg.wedge(&a.representative, &alg.d(&b.representative)),
                    &prod,
                );
                let t = a.t + b.t;
                let coords = cache.coordinates(n, t, &img);
                by_t.entry(t).or_default().push(coords);
            }
        }
        let mut rank = 0;
        for (t, cols) in by_t {
            let dim = cache.get(n, t).dim();
            let sparse: Vec<linalg::SparseVec> = cols
                .iter()
                .map(|c| {
                    c.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| (k, x.clone()))
                        .collect()
                })
                .collect();
            rank += linalg::column_reduce_in(ring.field(), dim, &sparse).rank;
        }
        let target_dim = hij.dim(n);
        degrees.push(KunnethDegree {
            n,
            source_dim,
            target_dim,
            rank,
            iso: source_dim == target_dim && rank == target_dim,
        });
    }
    let pass = degrees.iter().all(|d| d.iso);
    Ok(KunnethCertificate { degrees, pass })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorIndependence {
    pub independent: bool,
    /// First `(i, t, dim)` with `Tor_i(R/I, R/J)_t ≠ 0`.
    pub first_nonzero: Option<(usize, u32, usize)>,
}

/// Decides whether `Tor_i(R/I, R/J) = 0` for all `i ≥ 1` by computing
/// `H_i(F ⊗ R/J)` for the minimal resolution `F` of `R/I`. Strands are
/// scanned up to the degree bound coming from the two Taylor resolutions.
pub fn tor_independence(
    ring: &Ring,
    i_ideal: &MonomialIdeal,
    j_ideal: &MonomialIdeal,
) -> Result<TorIndependence> {
    check_proper(i_ideal)?;
    check_proper(j_ideal)?;
    let f = minimize_complex(&taylor_complex(ring, i_ideal)?)?;
    // Tor is multigraded and its support lies below lcm(I)·lcm(J): the strands
    // of the tensor product of Taylor resolutions stabilize there.
    let bound = i_ideal.lcm_degree_bound(i_ideal.len()) + j_ideal.lcm_degree_bound(j_ideal.len());
    let jobs: Vec<(usize, u32)> = (1..=f.length())
        .flat_map(|i| (0..=bound).map(move |t| (i, t)))
        .collect();
    let dims = par_map(&jobs, |&(i, t)| {
        strand_homology(&f, Some(j_ideal), t, i).dim()
    });
    let first_nonzero = jobs
        .iter()
        .zip(&dims)
        .find(|(_, d)| **d > 0)
        .map(|(&(i, t), &d)| (i, t, d));
    Ok(TorIndependence {
        independent: first_nonzero.is_none(),
        first_nonzero,
    })
}

/// A formal generator `v_{a,b}` of the Golod construction.
#[derive(Clone, Debug)]
pub struct VSymbol {
    pub a: usize,
    pub b: usize,
    /// `|z_a| + |z_b|`.
    pub degree: usize,
    pub internal: u32,
    /// Representative `d(z_a) ∧ z_b` of `h_{a,b}`, reduced modulo `IJ`.
    pub h: KElem,
}

/// Koszul homology bases of `R/I` and `R/J` and the derived symbols `v_{a,b}`.
#[derive(Clone, Debug)]
pub struct GolodBasis {
    pub ring: Ring,
    pub product: MonomialIdeal,
    pub a: Vec<KoszulClass>,
    pub b: Vec<KoszulClass>,
    /// Indexed by `a * |B| + b`.
    pub v: Vec<VSymbol>,
    alg: KoszulAlgebra,
}

impl GolodBasis {
    pub fn new(ring: &Ring, i_ideal: &MonomialIdeal, j_ideal: &MonomialIdeal) -> Result<Self> {
        if !is_transverse(i_ideal, j_ideal)? {
            return Err(Error::Domain("ideals are not transverse".into()));
        }
        let alg = KoszulAlgebra::new(ring);
        let product = i_ideal.product(j_ideal)?;
        let a = koszul_homology(ring, i_ideal)?.classes;
        let b = koszul_homology(ring, j_ideal)?.classes;
        let mut v = Vec::new();
        for (ia, za) in a.iter().enumerate() {
            for (ib, zb) in b.iter().enumerate() {
                let h = alg.reduce(
                    &alg.wedge(&alg.d(&za.representative), &zb.representative),
                    &product,
                );
                v.push(VSymbol {
                    a: ia,
                    b: ib,
                    degree: za.i + zb.i,
                    internal: za.t + zb.t,
                    h,
                });
            }
        }
        Ok(GolodBasis {
            ring: ring.clone(),
            product,
            a,
            b,
            v,
            alg,
        })
    }

    pub fn algebra(&self) -> &KoszulAlgebra {
        &self.alg
    }
}

/// The trivial Massey operation on a tuple of `h_{a,b}` classes, given by
/// symbol indices:
///
/// `μ(h_1, …, h_p) = (-1)^{p-1} d(z_{a_1}) ∧ z_{b_1} ∧ z_{a_2} ∧ z_{b_2} ∧ ⋯ ∧ z_{a_p} ∧ z_{b_p}`
///
/// reduced modulo `IJ`. With the sign `(-1)^{p-1}` the operation satisfies
/// `d μ(h_1..h_p) = Σ_{i<p} \bar{μ(h_1..h_i)} μ(h_{i+1}..h_p)` where
/// `\bar z = (-1)^{|z|+1} z`; the unsigned wedge satisfies it up to an
/// overall `-1` whenever `p ≥ 2`.
pub fn massey_mu(basis: &GolodBasis, tuple: &[usize]) -> Result<KElem> {
    let mu = massey_wedge(basis, tuple)?;
    Ok(if tuple.len().is_multiple_of(2) {
        basis.alg.neg(&mu)
    } else {
        mu
    })
}

/// The unsigned wedge `d(z_{a_1}) ∧ z_{b_1} ∧ ⋯ ∧ z_{a_p} ∧ z_{b_p}` mod `IJ`.
pub fn massey_wedge(basis: &GolodBasis, tuple: &[usize]) -> Result<KElem> {
    let (&first, rest) = tuple
        .split_first()
        .ok_or_else(|| Error::Domain("empty Massey tuple".into()))?;
    if let Some(bad) = tuple.iter().find(|&&k| k >= basis.v.len()) {
        return Err(Error::Domain(format!("no symbol v_{bad} in this basis")));
    }
    let alg = &basis.alg;
    let mut acc = basis.v[first].h.clone();
    for &k in rest {
        let v = &basis.v[k];
        acc = alg.wedge(&acc, &basis.a[v.a].representative);
        acc = alg.reduce(
            &alg.wedge(&acc, &basis.b[v.b].representative),
            &basis.product,
        );
    }
    Ok(acc)
}

/// `\bar z = (-1)^{|z|+1} z` for a homogeneous Koszul element.
pub fn bar(alg: &KoszulAlgebra, z: &KElem) -> KElem {
    match z.keys().next() {
        Some(s) if s.count_ones() % 2 == 0 => alg.neg(z),
        _ => z.clone(),
    }
}

/// Checks the Massey identity for one tuple, modulo `IJ`.
pub fn massey_identity_holds(basis: &GolodBasis, tuple: &[usize]) -> Result<bool> {
    let alg = &basis.alg;
    let lhs = alg.reduce(&alg.d(&massey_mu(basis, tuple)?), &basis.product);
    let mut rhs = KElem::new();
    for i in 1..tuple.len() {
        let left = bar(alg, &massey_mu(basis, &tuple[..i])?);
        let right = massey_mu(basis, &tuple[i..])?;
        rhs = alg.add(&rhs, &alg.wedge(&left, &right));
    }
    Ok(lhs == alg.reduce(&rhs, &basis.product))
}

/// The Golod complex with its generator bookkeeping.
#[derive(Clone, Debug)]
pub struct GolodResolution {
    pub basis: GolodBasis,
    pub complex: GradedFreeComplex,
    /// Generators of `T_n` as (Koszul subset, word of symbol indices).
    pub generators: Vec<Vec<(u64, Vec<usize>)>>,
}

/// Words in the symbols with total symbol degree at most `max`, ordered by
/// (length, lex).
fn words(symbols: &[VSymbol], max: usize) -> Vec<(Vec<usize>, usize)> {
    let mut out = vec![(Vec::new(), 0)];
    let mut frontier = vec![(Vec::new(), 0usize)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (w, d) in &frontier {
            for (k, s) in symbols.iter().enumerate() {
                if d + s.degree <= max {
                    let mut w2 = w.clone();
                    w2.push(k);
                    next.push((w2, d + s.degree));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `T_n = ⊕ K_h ⊗ V_{i_1} ⊗ ⋯ ⊗ V_{i_p}` with `h + i_1 + ⋯ + i_p = n`, where
/// `v_{a,b}` sits in degree `|z_a| + |z_b|`, and
/// `∂(e_S ⊗ w) = d(e_S) ⊗ w + (-1)^{|S|} Σ_j e_S μ(w_1..w_j) ⊗ w_{j+1..p}`.
/// Built for `n ≤ n_max` over `R/IJ`.
pub fn golod_resolution(
    ring: &Ring,
    i_ideal: &MonomialIdeal,
    j_ideal: &MonomialIdeal,
    n_max: usize,
) -> Result<GolodResolution> {
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let basis = GolodBasis::new(ring, i_ideal, j_ideal)?;
    let alg = &basis.alg;
    let nv = ring.nvars();
    let all_words = words(&basis.v, n_max);
    let mut generators: Vec<Vec<(u64, Vec<usize>)>> = vec![Vec::new(); n_max + 1];
    for h in 0..=nv.min(n_max) {
        for &s in alg.subsets(h) {
            for (w, d) in &all_words {
                if h + d <= n_max {
                    generators[h + d].push((s, w.clone()));
                }
            }
        }
    }
    // (h, S, word) order within each degree
    for g in &mut generators {
        g.sort_by(|x, y| {
            (x.0.count_ones(), alg.position(x.0), x.1.len(), &x.1).cmp(&(
                y.0.count_ones(),
                alg.position(y.0),
                y.1.len(),
                &y.1,
            ))
        });
    }
    let internal = |(s, w): &(u64, Vec<usize>)| -> u32 {
        s.count_ones() + w.iter().map(|&k| basis.v[k].internal).sum::<u32>()
    };
    let degrees: Vec<Vec<u32>> = generators
        .iter()
        .map(|g| g.iter().map(internal).collect())
        .collect();
    let labels: Vec<Vec<String>> = generators
        .iter()
        .map(|g| {
            g.iter()
                .map(|(s, w)| {
                    let mut l = exterior::label(*s);
                    for &k in w {
                        let v = &basis.v[k];
                        l.push_str(&format!("⊗v{},{}", v.a + 1, v.b + 1));
                    }
                    l
                })
                .collect()
        })
        .collect();
    let mut mu_cache: HashMap<Vec<usize>, KElem> = HashMap::new();
    let mut diffs = Vec::new();
    for n in 1..=n_max {
        let index: HashMap<(u64, &[usize]), usize> = generators[n - 1]
            .iter()
            .enumerate()
            .map(|(k, (s, w))| ((*s, w.as_slice()), k))
            .collect();
        let mut d = PolyMatrix::zeros(generators[n - 1].len(), generators[n].len());
        for (col, (s, w)) in generators[n].iter().enumerate() {
            for j in exterior::elements(*s) {
                let mut x = Polynomial::monomial(ring.var(j), ring.field());
                if exterior::removal_sign(*s, j) < 0 {
                    x = x.neg();
                }
                let row = index[&(s & !(1 << j), w.as_slice())];
                d.add_to(row, col, &x);
            }
            let outer = if s.count_ones() % 2 == 0 { 1 } else { -1 };
            for j in 1..=w.len() {
                let prefix = w[..j].to_vec();
                if !mu_cache.contains_key(&prefix) {
                    let mu = massey_mu(&basis, &prefix)?;
                    mu_cache.insert(prefix.clone(), mu);
                }
                let mu = &mu_cache[&prefix];
                let rest = &w[j..];
                for (t, p) in mu {
                    let sign = exterior::wedge_sign(*s, *t) * outer;
                    if sign == 0 {
                        continue;
                    }
                    let row = index[&(s | t, rest)];
                    let entry = if sign < 0 { p.neg() } else { p.clone() };
                    d.add_to(row, col, &basis.product.reduce(&entry));
                }
            }
        }
        diffs.push(d);
    }
    let complex = GradedFreeComplex::new(ring.clone(), degrees, diffs, labels)?
        .over_quotient(basis.product.clone())?;
    Ok(GolodResolution {
        basis,
        complex,
        generators,
    })
}

/// A rational power series `numerator / denominator` with its expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincareSeries {
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
    pub coefficients: Vec<i64>,
}

impl PoincareSeries {
    /// Expands `numerator / denominator` up to `t^n_max`; `denominator[0]` must be 1.
    pub fn new(numerator: Vec<i64>, denominator: Vec<i64>, n_max: usize) -> Self {
        assert_eq!(
            denominator.first(),
            Some(&1),
            "denominator must start with 1"
        );
        let mut c: Vec<i64> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut v = numerator.get(n).copied().unwrap_or(0);
            for k in 1..=n.min(denominator.len().saturating_sub(1)) {
                v -= denominator[k] * c[n - k];
            }
            c.push(v);
        }
        PoincareSeries {
            numerator,
            denominator,
            coefficients: c,
        }
    }

    pub fn format(&self) -> String {
        format!(
            "({}) / ({})",
            format_int_poly(&self.numerator),
            format_int_poly(&self.denominator)
        )
    }
}

fn format_int_poly(c: &[i64]) -> String {
    let mut out = String::new();
    for (k, &x) in c.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let mag = x.unsigned_abs();
        if out.is_empty() {
            if x < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if x < 0 { " - " } else { " + " });
        }
        match (k, mag) {
            (0, m) => out.push_str(&m.to_string()),
            (1, 1) => out.push('t'),
            (1, m) => out.push_str(&format!("{m}t")),
            (k, 1) => out.push_str(&format!("t^{k}")),
            (k, m) => out.push_str(&format!("{m}t^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `(1+t)^n / (1 - Σ_{i≥1} dim H_i(R/IJ) t^{i+1})`, the Poincaré series of
/// `k` over a Golod quotient, expanded to `t^n_max`.
pub fn golod_poincare(
    ring: &Ring,
    i_ideal: &MonomialIdeal,
    j_ideal: &MonomialIdeal,
    n_max: usize,
) -> Result<PoincareSeries> {
    if !is_transverse(i_ideal, j_ideal)? {
        return Err(Error::Domain("ideals are not transverse".into()));
    }
    let dims = koszul_homology(ring, &i_ideal.product(j_ideal)?)?.dims();
    Ok(poincare_from_dims(ring.nvars(), &dims, n_max))
}

/// The Golod bound series from Koszul homology dimensions (`dims[0]` ignored).
pub fn poincare_from_dims(nvars: usize, dims: &[usize], n_max: usize) -> PoincareSeries {
    let mut num = vec![1i64];
    for _ in 0..nvars {
        let mut next = vec![0i64; num.len() + 1];
        for (k, &x) in num.iter().enumerate() {
            next[k] += x;
            next[k + 1] += x;
        }
        num = next;
    }
    let mut den = vec![0i64; dims.len() + 1];
    den[0] = 1;
    for (i, &d) in dims.iter().enumerate().skip(1) {
        den[i + 1] -= d as i64;
    }
    while den.len() > 1 && den.last() == Some(&0) {
        den.pop();
    }
    PoincareSeries::new(num, den, n_max)
}

#[derive(Clone, Debug, Serialize)]
pub struct GolodCertificate {
    pub n_max: usize,
    pub ranks: Vec<usize>,
    pub series: PoincareSeries,
    pub ranks_match: Clause,
    pub valid: Clause,
    pub minimal: Clause,
    /// `H_i(T) = 0` for `1 <= i < n_max` in strands up to `bound`.
    pub exact: Clause,
    /// `coker ∂_1 ≅ k`.
    pub residue_field: Clause,
    pub bound: u32,
}

impl GolodCertificate {
    pub fn pass(&self) -> bool {
        [
            &self.ranks_match,
            &self.valid,
            &self.minimal,
            &self.exact,
            &self.residue_field,
        ]
        .iter()
        .all(|c| c.pass)
    }
}

/// Certifies the Golod complex up to `n_max`: ranks agree with the Poincaré
/// series, and the complex is valid, minimal, exact and augments to `k`.
pub fn verify_golod(
    ring: &Ring,
    i_ideal: &MonomialIdeal,
    j_ideal: &MonomialIdeal,
    n_max: usize,
) -> Result<GolodCertificate> {
    let res = golod_resolution(ring, i_ideal, j_ideal, n_max)?;
    let series = golod_poincare(ring, i_ideal, j_ideal, n_max)?;
    Ok(certify_golod_complex(&res.complex, &series, n_max))
}

pub(crate) fn certify_golod_complex(
    t: &GradedFreeComplex,
    series: &PoincareSeries,
    n_max: usize,
) -> GolodCertificate {
    let mut ranks = t.ranks();
    ranks.resize(n_max + 1, 0);
    let ranks_match = match (0..=n_max).find(|&n| ranks[n] as i64 != series.coefficients[n]) {
        None => Clause {
            pass: true,
            detail: None,
        },
        Some(n) => Clause {
            pass: false,
            detail: Some(format!(
                "rank T_{n} = {} but the series gives {}",
                ranks[n], series.coefficients[n]
            )),
        },
    };
    let valid = match t.validate() {
        Ok(()) => Clause {
            pass: true,
            detail: None,
        },
        Err(v) => Clause {
            pass: false,
            detail: Some(v.to_string()),
        },
    };
    let minimal = Clause {
        pass: t.is_minimal(),
        detail: t
            .first_unit_entry()
            .map(|(i, r, c)| format!("unit entry in d_{i} at ({r}, {c})")),
    };
    let max_gen = t.degrees(1).iter().copied().max().unwrap_or(1).max(1);
    let bound = (n_max as u32) * t.base().map_or(max_gen, |b| b.max_degree().max(1));
    let mut jobs = Vec::new();
    for i in 1..n_max.min(t.length() + 1) {
        for tt in 0..=bound {
            jobs.push((i, tt));
        }
    }
    let dims = par_map(&jobs, |&(i, tt)| strand_homology(t, None, tt, i).dim());
    let exact = match jobs.iter().zip(&dims).find(|(_, d)| **d > 0) {
        None => Clause {
            pass: true,
            detail: None,
        },
        Some(((i, tt), d)) => Clause {
            pass: false,
            detail: Some(format!("H_{i} has dimension {d} in degree {tt}")),
        },
    };
    let mut residue_field = Clause {
        pass: true,
        detail: None,
    };
    for tt in 0..=bound {
        let h0 = strand_homology(t, None, tt, 0).dim();
        let want = usize::from(tt == 0);
        if h0 != want {
            residue_field = Clause {
                pass: false,
                detail: Some(format!("H_0 has dimension {h0} in degree {tt}")),
            };
            break;
        }
    }
    GolodCertificate {
        n_max,
        ranks,
        series: series.clone(),
        ranks_match,
        valid,
        minimal,
        exact,
        residue_field,
        bound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorAlgebraReport {
    pub pairs_checked: usize,
    pub trivial: bool,
    /// Labels of the first pair whose product is not a boundary.
    pub first_failure: Option<(String, String)>,
}

/// Checks that the product of any two positive-degree basis classes of
/// `H(K ⊗ R/Q)` is a boundary.
pub fn tor_algebra_triviality(ring: &Ring, ideal: &MonomialIdeal) -> Result<TorAlgebraReport> {
    let h = koszul_homology(ring, ideal)?;
    let alg = KoszulAlgebra::new(ring);
    let mut cache = StrandCache::new(&alg, ideal);
    let mut pairs_checked = 0;
    for x in &h.classes {
        for y in &h.classes {
            pairs_checked += 1;
            let i = x.i + y.i;
            if i > ring.nvars() {
                continue;
            }
            let prod = alg.reduce(&alg.wedge(&x.representative, &y.representative), ideal);
            if prod.is_empty() {
                continue;
            }
            if !cache.is_boundary(i, x.t + y.t, &prod) {
                return Ok(TorAlgebraReport {
                    pairs_checked,
                    trivial: false,
                    first_failure: Some((x.label.clone(), y.label.clone())),
                });
            }
        }
    }
    Ok(TorAlgebraReport {
        pairs_checked,
        trivial: true,
        first_failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ring(n: usize) -> Ring {
        Ring::standard(n, Field::Rational)
    }

    fn xy() -> Ring {
        Ring::new(vec!["x".into(), "y".into()], Field::Rational).unwrap()
    }

    fn ideal(r: &Ring, g: &[&str]) -> MonomialIdeal {
        MonomialIdeal::parse(r, g).unwrap()
    }

    #[test]
    fn complete_intersection_homology() {
        let r = ring(4);
        let h = koszul_homology(&r, &ideal(&r, &["x1", "x2"])).unwrap();
        assert_eq!(&h.dims()[1..3], &[2, 1]);
        let alg = KoszulAlgebra::new(&r);
        let reps: Vec<String> = h
            .classes
            .iter()
            .map(|c| alg.format(&c.representative))
            .collect();
        assert_eq!(reps, vec!["(1)*e1", "(1)*e2", "(1)*e1∧e2"]);
    }

    #[test]
    fn hypersurface_xy() {
        let r = xy();
        let h = koszul_homology(&r, &ideal(&r, &["x*y"])).unwrap();
        assert_eq!(h.dim(1), 1);
        assert_eq!(h.dim(2), 0);
    }

    #[test]
    fn flagship_homology_and_kunneth() {
        let r = ring(4);
        let (i, j) = (ideal(&r, &["x1", "x2"]), ideal(&r, &["x3", "x4"]));
        let h = koszul_homology(&r, &i.product(&j).unwrap()).unwrap();
        assert_eq!(&h.dims()[1..], &[4, 4, 1, 0]);
        let k = kunneth_map(&r, &i, &j).unwrap();
        assert!(k.pass);
        let profile: Vec<usize> = k.degrees.iter().map(|d| d.target_dim).collect();
        assert_eq!(profile, vec![4, 4, 1, 0]);
        let swapped = kunneth_map(&r, &j, &i).unwrap();
        assert_eq!(swapped.degrees, k.degrees);
    }

    #[test]
    fn kunneth_xy() {
        let r = xy();
        let k = kunneth_map(&r, &ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
        assert!(k.pass);
        assert_eq!(
            k.degrees[0],
            KunnethDegree {
                n: 1,
                source_dim: 1,
                target_dim: 1,
                rank: 1,
                iso: true
            }
        );
    }

    #[test]
    fn tor_independence_examples() {
        let r = ring(4);
        assert!(
            tor_independence(&r, &ideal(&r, &["x1", "x2"]), &ideal(&r, &["x3", "x4"]))
                .unwrap()
                .independent
        );
        let t = tor_independence(&r, &ideal(&r, &["x1", "x2"]), &ideal(&r, &["x2", "x3"])).unwrap();
        assert!(!t.independent);
        assert_eq!(t.first_nonzero.map(|x| x.0), Some(1));
        let s = xy();
        assert!(
            !tor_independence(&s, &ideal(&s, &["x"]), &ideal(&s, &["x"]))
                .unwrap()
                .independent
        );
        // (I ∩ J)/IJ is spanned by x1*x2*x3^2, above every single-factor Taylor degree
        let r3 = ring(3);
        let t = tor_independence(
            &r3,
            &ideal(&r3, &["x1^2", "x1*x3^2"]),
            &ideal(&r3, &["x2*x3"]),
        )
        .unwrap();
        assert_eq!(t.first_nonzero, Some((1, 4, 1)));
    }

    #[test]
    fn massey_examples() {
        let r = xy();
        let b = GolodBasis::new(&r, &ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
        assert_eq!(b.v.len(), 1);
        assert_eq!(massey_mu(&b, &[0]).unwrap(), b.v[0].h);
        assert!(massey_mu(&b, &[0, 0]).unwrap().is_empty());
        assert!(massey_mu(&b, &[]).is_err());
    }

    #[test]
    fn massey_identity_flagship() {
        let r = ring(4);
        let b = GolodBasis::new(&r, &ideal(&r, &["x1", "x2"]), &ideal(&r, &["x3", "x4"])).unwrap();
        assert_eq!(b.v.len(), 9);
        let n = b.v.len();
        for x in 0..n {
            assert!(massey_identity_holds(&b, &[x]).unwrap());
            for y in 0..n {
                assert!(massey_identity_holds(&b, &[x, y]).unwrap());
                for z in 0..n {
                    assert!(
                        massey_identity_holds(&b, &[x, y, z]).unwrap(),
                        "{x} {y} {z}"
                    );
                }
            }
        }
    }

    #[test]
    fn unsigned_wedge_fails_identity_at_length_two() {
        // the pair v_{e1,e3}, v_{e2,e4}: the plain wedge picks up the opposite sign
        let r = ring(4);
        let b = GolodBasis::new(&r, &ideal(&r, &["x1", "x2"]), &ideal(&r, &["x3", "x4"])).unwrap();
        let alg = b.algebra();
        let (p, q) = (0, 4);
        let plain = massey_wedge(&b, &[p, q]).unwrap();
        let lhs = alg.reduce(&alg.d(&plain), &b.product);
        let rhs = alg.reduce(&alg.wedge(&bar(alg, &b.v[p].h), &b.v[q].h), &b.product);
        assert!(!lhs.is_empty());
        assert_eq!(lhs, alg.neg(&rhs));
    }

    #[test]
    fn golod_ranks_xy() {
        let r = xy();
        let g = golod_resolution(&r, &ideal(&r, &["x"]), &ideal(&r, &["y"]), 4).unwrap();
        assert_eq!(g.complex.ranks(), vec![1, 2, 2, 2, 2]);
        assert!(g.complex.is_valid());
        assert!(g.complex.is_minimal());
    }

    #[test]
    fn golod_flagship() {
        let r = ring(4);
        let cert =
            verify_golod(&r, &ideal(&r, &["x1", "x2"]), &ideal(&r, &["x3", "x4"]), 5).unwrap();
        assert_eq!(cert.ranks, vec![1, 4, 10, 24, 58, 140]);
        assert_eq!(cert.series.coefficients, vec![1, 4, 10, 24, 58, 140]);
        assert_eq!(cert.series.denominator, vec![1, 0, -4, -4, -1]);
        assert!(cert.pass(), "{cert:?}");
    }

    #[test]
    fn series_formatting() {
        let s = poincare_from_dims(2, &[1, 1], 4);
        assert_eq!(s.coefficients, vec![1, 2, 2, 2, 2]);
        assert_eq!(s.format(), "(1 + 2t + t^2) / (1 - t^2)");
    }

    #[test]
    fn tor_algebra_trivial_for_product() {
        let r = ring(4);
        let prod = ideal(&r, &["x1*x3", "x1*x4", "x2*x3", "x2*x4"]);
        let rep = tor_algebra_triviality(&r, &prod).unwrap();
        assert!(rep.trivial);
        // a complete intersection has a nontrivial Tor algebra
        let ci = tor_algebra_triviality(&r, &ideal(&r, &["x1", "x2"])).unwrap();
        assert!(!ci.trivial);
    }
}
