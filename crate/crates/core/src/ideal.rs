use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// A monomial ideal stored by its minimal generators in descending lex order
/// (`x1 > x2 > ...`, so `x1^2` precedes `x1*x2`).
///
/// The zero ideal has no generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Keeps the divisibility-minimal generators, deduplicated and sorted.
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::RingMismatch(format!(
                "generator with {} variables in a ring with {nvars}",
                bad.nvars()
            )));
        }
        Ok(MonomialIdeal {
            nvars,
            gens: minimalize(gens),
        })
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    pub fn parse<S: AsRef<str>>(ring: &Ring, gens: &[S]) -> Result<Self> {
        let ms = gens
            .iter()
            .map(|g| ring.monomial(g.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(ring.nvars(), ms)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides_unchecked(m))
    }

    /// Drops every term of `p` lying in the ideal.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut q = p.clone();
        if !self.gens.is_empty() {
            q.drop_terms(|m| self.contains(m));
        }
        q
    }

    fn check(&self, other: &MonomialIdeal) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.mul(b)))
            .collect();
        Ok(MonomialIdeal {
            nvars: self.nvars,
            gens: minimalize(gens),
        })
    }

    pub fn intersection(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.lcm(b).expect("checked")))
            .collect();
        Ok(MonomialIdeal {
            nvars: self.nvars,
            gens: minimalize(gens),
        })
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(MonomialIdeal {
            nvars: self.nvars,
            gens: minimalize(gens),
        })
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Variables appearing in some generator.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.gens.iter().any(|g| g.exponents()[i] > 0))
            .collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Monomials of degree `t` outside the ideal, sorted descending in lex
    /// order (so `x1^t` comes first when present).
    pub fn degree_basis(&self, t: u32) -> Vec<Monomial> {
        Monomial::all_of_degree(self.nvars, t)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect()
    }

    /// Largest degree of an lcm of `l` generators; an upper bound on the
    /// internal degrees in homological degree `l` of any resolution of the
    /// quotient, since the Taylor complex is one.
    pub fn lcm_degree_bound(&self, l: usize) -> u32 {
        if l == 0 {
            return 0;
        }
        let g = self.gens.len();
        if l > g {
            return 0;
        }
        if g > 20 {
            // too many subsets to scan; the lcm of everything still bounds it
            let all = self.gens.iter().fold(Monomial::one(self.nvars), |a, b| {
                a.lcm(b).expect("same ring")
            });
            return all.degree();
        }
        let mut best = 0;
        for mask in 0u32..(1 << g) {
            if mask.count_ones() as usize != l {
                continue;
            }
            let mut acc = Monomial::one(self.nvars);
            for (i, m) in self.gens.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    acc = acc.lcm(m).expect("same ring");
                }
            }
            best = best.max(acc.degree());
        }
        best
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.gens.is_empty() {
            return "(0)".into();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.format(names)).collect();
        format!("({})", parts.join(", "))
    }

    /// Generator strings for serialization.
    pub fn to_strings(&self, names: &[String]) -> Vec<String> {
        self.gens.iter().map(|g| g.format(names)).collect()
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    // degree-ascending scan: a divisor always has smaller or equal degree
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for g in gens {
        if !kept.iter().any(|k| k.divides_unchecked(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(|a, b| b.cmp(a));
    kept
}

/// Outcome of a transversality check, with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversality {
    pub transverse: bool,
    /// A minimal generator of the intersection that is not in the product.
    pub witness: Option<Vec<u32>>,
}

fn check_proper(i: &MonomialIdeal) -> Result<()> {
    if i.is_zero() {
        return Err(Error::Domain("zero ideal".into()));
    }
    if i.is_unit() {
        return Err(Error::Domain("unit ideal".into()));
    }
    Ok(())
}

pub fn transversality(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Transversality> {
    i.check(j)?;
    check_proper(i)?;
    check_proper(j)?;
    let cap = i.intersection(j)?;
    let prod = i.product(j)?;
    let witness = cap
        .gens
        .iter()
        .find(|g| !prod.contains(g))
        .map(|g| g.exponents().to_vec());
    Ok(Transversality {
        transverse: witness.is_none(),
        witness,
    })
}

/// `I ∩ J = IJ`, compared on minimal generators.
pub fn is_transverse(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<bool> {
    Ok(transversality(i, j)?.transverse)
}

/// Checks that `I_1 ⋯ I_k` is transverse to `I_{k+1}` for every `k`. On
/// failure returns the first failing step, counted from 1.
pub fn sequential_transversality(
    ideals: &[MonomialIdeal],
) -> Result<std::result::Result<(), usize>> {
    if ideals.len() < 2 {
        return Err(Error::Domain("need at least two ideals".into()));
    }
    let mut prod = ideals[0].clone();
    for (step, next) in ideals[1..].iter().enumerate() {
        if !is_transverse(&prod, next)? {
            return Ok(Err(step + 1));
        }
        prod = prod.product(next)?;
    }
    Ok(Ok(()))
}

pub fn is_sequentially_transverse(ideals: &[MonomialIdeal]) -> Result<bool> {
    Ok(sequential_transversality(ideals)?.is_ok())
}
