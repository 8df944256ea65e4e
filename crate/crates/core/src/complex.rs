//! Graded free chain complexes over `k[x_1..x_n]` or a monomial quotient of it.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// An element of a free module: basis index to nonzero coefficient.
pub type Element = BTreeMap<usize, Polynomial>;

/// `acc += c * v`, dropping cancelled entries.
pub fn element_add_scaled(acc: &mut Element, c: &Polynomial, v: &Element) {
    for (i, p) in v {
        let term = c.mul(p);
        add_entry(acc, *i, &term);
    }
}

pub(crate) fn add_entry(acc: &mut Element, i: usize, p: &Polynomial) {
    if p.is_zero() {
        return;
    }
    let sum = match acc.get(&i) {
        Some(q) => q.add(p),
        None => p.clone(),
    };
    if sum.is_zero() {
        acc.remove(&i);
    } else {
        acc.insert(i, sum);
    }
}

/// A finite graded free complex `F_0 <- F_1 <- ... <- F_len`.
///
/// When `base` is set the complex lives over `R/base` and every differential
/// entry is reduced modulo it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeComplex {
    ring: Ring,
    base: Option<MonomialIdeal>,
    degrees: Vec<Vec<u32>>,
    labels: Vec<Vec<String>>,
    // diffs[i - 1] is d_i: F_i -> F_{i-1}
    diffs: Vec<PolyMatrix>,
}

impl GradedFreeComplex {
    /// Builds a complex, checking that matrix shapes match the ranks.
    /// Labels default to generator indices when `labels` is empty.
    pub fn new(
        ring: Ring,
        degrees: Vec<Vec<u32>>,
        diffs: Vec<PolyMatrix>,
        labels: Vec<Vec<String>>,
    ) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidComplex(
                "a complex needs a degree-0 term".into(),
            ));
        }
        if diffs.len() + 1 != degrees.len() {
            return Err(Error::Dimension {
                expected: degrees.len() - 1,
                found: diffs.len(),
            });
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.nrows() != degrees[i].len() {
                return Err(Error::Dimension {
                    expected: degrees[i].len(),
                    found: d.nrows(),
                });
            }
            if d.ncols() != degrees[i + 1].len() {
                return Err(Error::Dimension {
                    expected: degrees[i + 1].len(),
                    found: d.ncols(),
                });
            }
        }
        let labels = if labels.is_empty() {
            degrees
                .iter()
                .map(|g| (0..g.len()).map(|j| j.to_string()).collect())
                .collect()
        } else {
            if labels.len() != degrees.len()
                || labels.iter().zip(&degrees).any(|(l, g)| l.len() != g.len())
            {
                return Err(Error::InvalidComplex(
                    "label shape does not match ranks".into(),
                ));
            }
            labels
        };
        let mut c = GradedFreeComplex {
            ring,
            base: None,
            degrees,
            labels,
            diffs,
        };
        c.trim();
        Ok(c)
    }

    /// The free module `R` in degree 0.
    pub fn unit(ring: Ring) -> Self {
        GradedFreeComplex {
            ring,
            base: None,
            degrees: vec![vec![0]],
            labels: vec![vec!["1".into()]],
            diffs: Vec::new(),
        }
    }

    /// Reinterprets the complex over `R/base`, reducing every entry.
    pub fn over_quotient(mut self, base: MonomialIdeal) -> Result<Self> {
        if base.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch(
                "base ideal lives in a different ring".into(),
            ));
        }
        self.diffs = self
            .diffs
            .iter()
            .map(|d| d.map_entries(|p| base.reduce(p)))
            .collect();
        self.base = if base.is_zero() { None } else { Some(base) };
        Ok(self)
    }

    // drops trailing zero terms above degree 0
    fn trim(&mut self) {
        while self.degrees.len() > 1 && self.degrees.last().is_some_and(Vec::is_empty) {
            self.degrees.pop();
            self.labels.pop();
            self.diffs.pop();
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn base(&self) -> Option<&MonomialIdeal> {
        self.base.as_ref()
    }

    /// Largest homological degree with a nonzero term (0 for the zero complex).
    pub fn length(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degrees.get(i).map_or(0, Vec::len)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    /// Internal degrees of the generators of `F_i`.
    pub fn degrees(&self, i: usize) -> &[u32] {
        self.degrees.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn labels(&self, i: usize) -> &[String] {
        self.labels.get(i).map_or(&[], Vec::as_slice)
    }

    /// `d_i: F_i -> F_{i-1}` for `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> Option<&PolyMatrix> {
        if i == 0 {
            return None;
        }
        self.diffs.get(i - 1)
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.degrees.iter().flatten().copied().max().unwrap_or(0)
    }

    /// `d_i` applied to an element of `F_i`.
    pub fn apply(&self, i: usize, v: &Element) -> Element {
        let mut out = Element::new();
        let Some(d) = self.differential(i) else {
            return out;
        };
        for (j, c) in v {
            for (r, p) in d.column(*j) {
                add_entry(&mut out, *r, &self.reduce(&p.mul(c)));
            }
        }
        out
    }

    /// Reduces modulo the base ideal, if any.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        match &self.base {
            Some(b) => b.reduce(p),
            None => p.clone(),
        }
    }

    /// Checks `d^2 = 0` and that each entry is homogeneous of the degree
    /// difference of its generators.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for i in 1..=self.length() {
            let d = &self.diffs[i - 1];
            for (r, c, p) in d.entries() {
                let want = self.degrees[i][c] as i64 - self.degrees[i - 1][r] as i64;
                let bad = match p.degree() {
                    Some(e) => e as i64 != want,
                    None => true,
                };
                if bad {
                    return Err(Violation::Inhomogeneous {
                        i,
                        row: r,
                        col: c,
                        expected: want,
                    });
                }
            }
        }
        for i in 2..=self.length() {
            let prod = self.diffs[i - 2]
                .mul(&self.diffs[i - 1])
                .expect("shapes checked");
            for (r, c, p) in prod.entries() {
                if !self.reduce(p).is_zero() {
                    let shown = self.reduce(p).format(self.ring.names());
                    return Err(Violation::NotComplex {
                        i,
                        row: r,
                        col: c,
                        entry: shown,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// No differential entry has a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.first_unit_entry().is_none()
    }

    /// First entry with a nonzero constant term, scanning by (degree, row, col).
    pub fn first_unit_entry(&self) -> Option<(usize, usize, usize)> {
        for i in 1..=self.length() {
            if let Some((r, c)) = unit_entry(&self.diffs[i - 1]) {
                return Some((i, r, c));
            }
        }
        None
    }

    fn check_compatible(&self, other: &GradedFreeComplex) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.base != other.base {
            return Err(Error::RingMismatch(
                "complexes live over different quotients".into(),
            ));
        }
        Ok(())
    }

    /// `F ⊗ G` with `d(f⊗g) = df⊗g + (-1)^{|f|} f⊗dg`; bases ordered by
    /// (F-degree, F-index, G-index).
    pub fn tensor(&self, other: &GradedFreeComplex) -> Result<GradedFreeComplex> {
        self.check_compatible(other)?;
        Ok(product_complex(self, other, 0))
    }

    /// Zeroes every term below `n` and the differential leaving `F_n`.
    pub fn stupid_truncation(&self, n: usize) -> GradedFreeComplex {
        let mut c = self.clone();
        for i in 0..n.min(c.degrees.len()) {
            c.degrees[i].clear();
            c.labels[i].clear();
        }
        for i in 1..=c.length() {
            let d = &mut c.diffs[i - 1];
            *d = PolyMatrix::zeros(c.degrees[i - 1].len(), c.degrees[i].len());
            if i > n {
                *d = self.diffs[i - 1].clone();
            }
        }
        c.trim();
        if n > self.length() {
            c.degrees = vec![Vec::new()];
            c.labels = vec![Vec::new()];
            c.diffs.clear();
        }
        c
    }

    /// `(F*G)_0 = R`, `(F*G)_n = ⊕_{i+j=n+1, i,j≥1} F_i⊗G_j`, with
    /// `d_1 = d_1^F ⊗ d_1^G` and the tensor differential of `F_{≥1}⊗G_{≥1}` above.
    pub fn star_product(&self, other: &GradedFreeComplex) -> Result<GradedFreeComplex> {
        self.check_compatible(other)?;
        for c in [self, other] {
            if c.degrees(0) != [0] {
                return Err(Error::Domain("star product needs F_0 = R".into()));
            }
            if let Err(v) = c.validate() {
                return Err(Error::InvalidComplex(v.to_string()));
            }
        }
        Ok(product_complex(self, other, 1))
    }

    pub fn betti_table(&self) -> Result<BettiTable> {
        if !self.is_minimal() {
            return Err(Error::NotMinimal);
        }
        Ok(self.graded_ranks())
    }

    /// Generator counts by (homological, internal) degree, minimal or not.
    pub fn graded_ranks(&self) -> BettiTable {
        let mut t = BettiTable::default();
        for (i, ds) in self.degrees.iter().enumerate() {
            for &d in ds {
                *t.entries.entry((i, d)).or_insert(0) += 1;
            }
        }
        t
    }

    pub fn to_doc(&self) -> ComplexDoc {
        let names = self.ring.names();
        ComplexDoc {
            ring: self.ring.clone(),
            base: self.base.as_ref().map(|b| b.to_strings(names)),
            degrees: self.degrees.clone(),
            labels: self.labels.clone(),
            differentials: self
                .diffs
                .iter()
                .map(|d| {
                    d.entries()
                        .map(|(r, c, p)| (r, c, p.format(names)))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &ComplexDoc) -> Result<GradedFreeComplex> {
        let ring = Ring::new(doc.ring.names().to_vec(), doc.ring.field())?;
        let mut diffs = Vec::new();
        for (k, entries) in doc.differentials.iter().enumerate() {
            let nrows = doc.degrees.get(k).map_or(0, Vec::len);
            let ncols = doc.degrees.get(k + 1).map_or(0, Vec::len);
            let parsed = entries
                .iter()
                .map(|(r, c, s)| Ok((*r, *c, Polynomial::parse(s, &ring)?)))
                .collect::<Result<Vec<_>>>()?;
            diffs.push(PolyMatrix::from_entries(nrows, ncols, parsed)?);
        }
        let c =
            GradedFreeComplex::new(ring.clone(), doc.degrees.clone(), diffs, doc.labels.clone())?;
        match &doc.base {
            Some(gens) => c.over_quotient(MonomialIdeal::parse(&ring, gens)?),
            None => Ok(c),
        }
    }

    // internal constructor for code that assembles complexes piecewise
    pub(crate) fn from_parts(
        ring: Ring,
        base: Option<MonomialIdeal>,
        degrees: Vec<Vec<u32>>,
        labels: Vec<Vec<String>>,
        diffs: Vec<PolyMatrix>,
    ) -> GradedFreeComplex {
        let mut c = GradedFreeComplex {
            ring,
            base,
            degrees,
            labels,
            diffs,
        };
        c.trim();
        c
    }

    pub(crate) fn parts_mut(
        &mut self,
    ) -> (
        &mut Vec<Vec<u32>>,
        &mut Vec<Vec<String>>,
        &mut Vec<PolyMatrix>,
    ) {
        (&mut self.degrees, &mut self.labels, &mut self.diffs)
    }

    pub(crate) fn retrim(&mut self) {
        self.trim();
    }
}

pub(crate) fn unit_entry(d: &PolyMatrix) -> Option<(usize, usize)> {
    d.entries()
        .filter(|(_, _, p)| p.constant_term().is_some())
        .map(|(r, c, _)| (r, c))
        .min()
}

/// Left-fold of [`GradedFreeComplex::star_product`].
pub fn star_product_all(complexes: &[GradedFreeComplex]) -> Result<GradedFreeComplex> {
    let (first, rest) = complexes
        .split_first()
        .ok_or_else(|| Error::Domain("empty list of complexes".into()))?;
    rest.iter()
        .try_fold(first.clone(), |acc, c| acc.star_product(c))
}

/// Offsets of the `(i, j)` blocks in each total degree.
struct BlockLayout {
    // per total degree n: list of (i, j, offset)
    blocks: Vec<Vec<(usize, usize, usize)>>,
}

impl BlockLayout {
    fn new(f: &GradedFreeComplex, g: &GradedFreeComplex, lo: usize, shift: usize) -> Self {
        let top = f.length() + g.length();
        let mut blocks = Vec::new();
        for n in 0..=top {
            let mut list = Vec::new();
            let mut off = 0;
            for i in lo..=f.length() {
                let total = n + shift;
                if total < i || total - i < lo || total - i > g.length() {
                    continue;
                }
                let j = total - i;
                list.push((i, j, off));
                off += f.rank(i) * g.rank(j);
            }
            blocks.push(list);
        }
        BlockLayout { blocks }
    }

    fn find(&self, n: usize, i: usize) -> Option<(usize, usize)> {
        self.blocks
            .get(n)?
            .iter()
            .find(|b| b.0 == i)
            .map(|b| (b.1, b.2))
    }
}

// lo = 0: tensor product. lo = 1: star product, whose degree n term is the
// degree n + 1 term of F_{≥1} ⊗ G_{≥1}, with R in degree 0.
fn product_complex(f: &GradedFreeComplex, g: &GradedFreeComplex, lo: usize) -> GradedFreeComplex {
    let shift = lo;
    let layout = BlockLayout::new(f, g, lo, shift);
    let top = layout.blocks.len();
    let mut degrees = vec![Vec::new(); top];
    let mut labels = vec![Vec::new(); top];
    for (n, list) in layout.blocks.iter().enumerate() {
        for &(i, j, _) in list {
            for a in 0..f.rank(i) {
                for b in 0..g.rank(j) {
                    degrees[n].push(f.degrees[i][a] + g.degrees[j][b]);
                    labels[n].push(format!("{}⊗{}", f.labels[i][a], g.labels[j][b]));
                }
            }
        }
    }
    if lo == 1 {
        degrees[0] = vec![0];
        labels[0] = vec!["1".into()];
    }
    let mut diffs = Vec::new();
    for n in 1..top {
        let mut d = PolyMatrix::zeros(degrees[n - 1].len(), degrees[n].len());
        if lo == 1 && n == 1 {
            // d_1 = d_1^F ⊗ d_1^G into R
            let (df, dg) = (f.differential(1), g.differential(1));
            if let (Some(df), Some(dg)) = (df, dg) {
                for a in 0..f.rank(1) {
                    for b in 0..g.rank(1) {
                        if let (Some(p), Some(q)) = (df.get(0, a), dg.get(0, b)) {
                            d.set(0, a * g.rank(1) + b, f.reduce(&p.mul(q)));
                        }
                    }
                }
            }
            diffs.push(d);
            continue;
        }
        for &(i, j, off) in &layout.blocks[n] {
            let gr = g.rank(j);
            // df ⊗ g
            if i > lo {
                if let (Some(df), Some((_, off2))) = (f.differential(i), layout.find(n - 1, i - 1))
                {
                    for (r, a, p) in df.entries() {
                        for b in 0..gr {
                            d.add_to(off2 + r * gr + b, off + a * gr + b, p);
                        }
                    }
                }
            }
            // (-1)^i f ⊗ dg
            if j > lo {
                if let (Some(dg), Some((_, off2))) = (g.differential(j), layout.find(n - 1, i)) {
                    let gr2 = g.rank(j - 1);
                    for (r, b, q) in dg.entries() {
                        let q = if i % 2 == 1 { q.neg() } else { q.clone() };
                        for a in 0..f.rank(i) {
                            d.add_to(off2 + a * gr2 + r, off + a * gr + b, &q);
                        }
                    }
                }
            }
        }
        diffs.push(d);
    }
    GradedFreeComplex::from_parts(f.ring.clone(), f.base.clone(), degrees, labels, diffs)
}

/// The first failure found by [`GradedFreeComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotComplex {
        i: usize,
        row: usize,
        col: usize,
        entry: String,
    },
    Inhomogeneous {
        i: usize,
        row: usize,
        col: usize,
        expected: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotComplex { i, row, col, entry } => {
                write!(f, "d_{} d_{} has entry {entry} at ({row}, {col})", i - 1, i)
            }
            Violation::Inhomogeneous {
                i,
                row,
                col,
                expected,
            } => {
                write!(
                    f,
                    "d_{i} entry ({row}, {col}) is not homogeneous of degree {expected}"
                )
            }
        }
    }
}

/// Graded Betti numbers keyed by (homological degree, internal degree).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u32), usize>,
}

impl BettiTable {
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, u32), usize)>) -> Self {
        BettiTable {
            entries: entries.into_iter().filter(|(_, v)| *v > 0).collect(),
        }
    }

    pub fn get(&self, i: usize, t: u32) -> usize {
        self.entries.get(&(i, t)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), usize)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    /// Total rank in each homological degree up to the last nonzero one.
    pub fn totals(&self) -> Vec<usize> {
        let len = self.entries.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        let mut out = vec![0; len];
        for ((i, _), v) in &self.entries {
            out[*i] += v;
        }
        out
    }

    /// Macaulay2-style staircase: row `r` column `i` holds β(i, i + r).
    pub fn render(&self) -> String {
        let totals = self.totals();
        if totals.is_empty() {
            return "total:\n".into();
        }
        let ncols = totals.len();
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self
                .entries
                .keys()
                .map(|(i, t)| *t as i64 - *i as i64)
                .collect();
            r.sort();
            r.dedup();
            match (r.first(), r.last()) {
                (Some(&a), Some(&b)) => (a..=b).collect(),
                _ => Vec::new(),
            }
        };
        let cell = |i: usize, r: i64| -> String {
            let t = i as i64 + r;
            if t < 0 {
                return ".".into();
            }
            match self.get(i, t as u32) {
                0 => ".".into(),
                v => v.to_string(),
            }
        };
        let widths: Vec<usize> = (0..ncols)
            .map(|i| {
                let mut w = i.to_string().len().max(totals[i].to_string().len());
                for &r in &rows {
                    w = w.max(cell(i, r).len());
                }
                w
            })
            .collect();
        let head_w = rows
            .iter()
            .map(|r| format!("{r}:").len())
            .chain(std::iter::once("total:".len()))
            .max()
            .unwrap_or(6);
        let mut out = String::new();
        let line = |label: &str, cells: Vec<String>| {
            let mut s = format!("{label:>head_w$}");
            for (c, w) in cells.iter().zip(&widths) {
                s.push_str(&format!(" {c:>w$}"));
            }
            s.trim_end().to_string()
        };
        out.push_str(&line("", (0..ncols).map(|i| i.to_string()).collect()));
        out.push('\n');
        out.push_str(&line(
            "total:",
            totals.iter().map(|v| v.to_string()).collect(),
        ));
        out.push('\n');
        for &r in &rows {
            out.push_str(&line(
                &format!("{r}:"),
                (0..ncols).map(|i| cell(i, r)).collect(),
            ));
            out.push('\n');
        }
        out
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            i: usize,
            t: u32,
            value: usize,
        }
        let list: Vec<Entry> = self
            .entries
            .iter()
            .map(|(&(i, t), &value)| Entry { i, t, value })
            .collect();
        #[derive(Serialize)]
        struct Doc {
            totals: Vec<usize>,
            entries: Vec<Entry>,
        }
        Doc {
            totals: self.totals(),
            entries: list,
        }
        .serialize(s)
    }
}

/// JSON form of a complex: differentials as `(row, col, polynomial)` triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub ring: Ring,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<String>>,
    pub degrees: Vec<Vec<u32>>,
    #[serde(default)]
    pub labels: Vec<Vec<String>>,
    pub differentials: Vec<Vec<(usize, usize, String)>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn xy() -> Ring {
        Ring::new(vec!["x".into(), "y".into()], Field::Rational).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        Polynomial::parse(s, r).unwrap()
    }

    fn one_step(r: &Ring, a: &str) -> GradedFreeComplex {
        let q = p(r, a);
        let deg = q.degree().unwrap();
        let d = PolyMatrix::from_entries(1, 1, [(0, 0, q)]).unwrap();
        GradedFreeComplex::new(r.clone(), vec![vec![0], vec![deg]], vec![d], vec![]).unwrap()
    }

    #[test]
    fn invalid_square() {
        let r = xy();
        let d1 = PolyMatrix::from_entries(1, 1, [(0, 0, p(&r, "x"))]).unwrap();
        let d2 = PolyMatrix::from_entries(1, 1, [(0, 0, p(&r, "x"))]).unwrap();
        let c = GradedFreeComplex::new(r, vec![vec![0], vec![1], vec![2]], vec![d1, d2], vec![])
            .unwrap();
        match c.validate() {
            Err(Violation::NotComplex { i: 2, entry, .. }) => assert_eq!(entry, "x^2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inhomogeneous_entry() {
        let r = xy();
        let d1 = PolyMatrix::from_entries(1, 1, [(0, 0, p(&r, "x + y^2"))]).unwrap();
        let c = GradedFreeComplex::new(r, vec![vec![0], vec![1]], vec![d1], vec![]).unwrap();
        assert!(matches!(c.validate(), Err(Violation::Inhomogeneous { .. })));
    }

    #[test]
    fn tensor_of_two_steps_is_koszul() {
        let r = xy();
        let k = one_step(&r, "x").tensor(&one_step(&r, "y")).unwrap();
        assert_eq!(k.ranks(), vec![1, 2, 1]);
        assert!(k.is_valid());
        let d2 = k.differential(2).unwrap();
        // basis of degree 1: (F_0⊗G_1, F_1⊗G_0) = (e_y, e_x)
        assert_eq!(d2.get(0, 0), Some(&p(&r, "x")));
        assert_eq!(d2.get(1, 0), Some(&p(&r, "-y")));
        let u = GradedFreeComplex::unit(r);
        assert_eq!(k.tensor(&u).unwrap().differential(2), k.differential(2));
    }

    #[test]
    fn truncation() {
        let r = xy();
        let k = one_step(&r, "x").tensor(&one_step(&r, "y")).unwrap();
        assert_eq!(k.stupid_truncation(0), k);
        let t = k.stupid_truncation(1);
        assert_eq!(t.ranks(), vec![0, 2, 1]);
        assert!(t.differential(1).unwrap().is_zero());
        assert_eq!(t.differential(2), k.differential(2));
        assert!(t.is_valid());
        let z = k.stupid_truncation(3);
        assert_eq!(z.ranks(), vec![0]);
    }

    #[test]
    fn star_of_one_steps() {
        let r = xy();
        let s = one_step(&r, "x").star_product(&one_step(&r, "y")).unwrap();
        assert_eq!(s.ranks(), vec![1, 1]);
        assert_eq!(s.differential(1).unwrap().get(0, 0), Some(&p(&r, "x*y")));
        let r3 = Ring::standard(3, Field::Rational);
        let all = star_product_all(&[
            one_step(&r3, "x1"),
            one_step(&r3, "x2"),
            one_step(&r3, "x3"),
        ])
        .unwrap();
        assert_eq!(all.ranks(), vec![1, 1]);
        assert_eq!(
            all.differential(1).unwrap().get(0, 0),
            Some(&p(&r3, "x1*x2*x3"))
        );
    }

    #[test]
    fn betti_render() {
        let r = xy();
        let k = one_step(&r, "x").tensor(&one_step(&r, "y")).unwrap();
        let b = k.betti_table().unwrap();
        assert_eq!((b.get(0, 0), b.get(1, 1), b.get(2, 2)), (1, 2, 1));
        assert_eq!(b.render(), "       0 1 2\ntotal: 1 2 1\n    0: 1 2 1\n");
        let u = GradedFreeComplex::unit(r).betti_table().unwrap();
        assert_eq!(u.totals(), vec![1]);
    }

    #[test]
    fn doc_round_trip() {
        let r = xy();
        let k = one_step(&r, "x").tensor(&one_step(&r, "y")).unwrap();
        let json = serde_json::to_string(&k.to_doc()).unwrap();
        let back: ComplexDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(GradedFreeComplex::from_doc(&back).unwrap(), k);
    }
}
