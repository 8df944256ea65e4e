use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::monomial::Monomial;
use crate::ring::Ring;

/// A sparse polynomial with nonzero coefficients keyed by monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Polynomial::term(Monomial::one(nvars), c)
    }

    pub fn monomial(m: Monomial, field: Field) -> Self {
        Polynomial::term(m, field.one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lex order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// Common total degree of all terms; `None` for zero or non-homogeneous input.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// The coefficient of the constant monomial, if nonzero.
    pub fn constant_term(&self) -> Option<&Scalar> {
        self.terms.iter().find(|(m, _)| m.is_one()).map(|(_, c)| c)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += c * m * other`.
    pub fn add_scaled(&mut self, c: &Scalar, m: &Monomial, other: &Polynomial) {
        for (n, d) in &other.terms {
            self.add_term(n.mul(m), c * d);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), c * d)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Product; panics if the operands live in rings with different variable counts.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_scaled(c, m, other);
        }
        out
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if let (Some((a, _)), Some((b, _))) = (self.terms.iter().next(), other.terms.iter().next())
        {
            if a.nvars() != b.nvars() {
                return Err(Error::RingMismatch(format!(
                    "{} vs {} variables",
                    a.nvars(),
                    b.nvars()
                )));
            }
        }
        Ok(self.mul(other))
    }

    /// Drops every term whose monomial satisfies `pred`.
    pub fn drop_terms(&mut self, mut pred: impl FnMut(&Monomial) -> bool) {
        self.terms.retain(|m, _| !pred(m));
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let neg = c.prints_negative();
            let abs = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.format(names));
            } else {
                out.push_str(&format!("{abs}*{}", m.format(names)));
            }
        }
        out
    }

    /// Parses sums of terms such as `x1^2*x2 - 3/2*x3 + 5`.
    pub fn parse(s: &str, ring: &Ring) -> Result<Polynomial> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for ch in s.chars() {
            if ch == '+' || ch == '-' {
                if current.trim().is_empty() {
                    // leading or repeated sign
                    negative ^= ch == '-';
                } else {
                    pieces.push((negative, std::mem::take(&mut current)));
                    negative = ch == '-';
                }
            } else {
                current.push(ch);
            }
        }
        if current.trim().is_empty() {
            return Err(Error::Parse(format!("dangling sign in '{s}'")));
        }
        pieces.push((negative, current));
        let mut out = Polynomial::zero();
        for (neg, piece) in pieces {
            let (coef, mono) = split_term(piece.trim(), ring)?;
            out.add_term(mono, if neg { -&coef } else { coef });
        }
        Ok(out)
    }
}

fn split_term(t: &str, ring: &Ring) -> Result<(Scalar, Monomial)> {
    let field = ring.field();
    let mut coef = field.one();
    let mut mono = ring.one();
    for factor in t.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            return Err(Error::Parse(format!("empty factor in '{t}'")));
        }
        if f.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            let c = Scalar::parse(field, f)
                .ok_or_else(|| Error::Parse(format!("bad coefficient '{f}'")))?;
            coef = &coef * &c;
        } else {
            mono = mono.mul(&ring.monomial(f)?);
        }
    }
    Ok((coef, mono))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(vec!["x".into(), "y".into()], Field::Rational).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &ring()).unwrap()
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("x + y").mul(&p("x - y")), p("x^2 - y^2"));
        assert!(p("x + y").mul(&Polynomial::zero()).is_zero());
        let xy = p("x").mul(&p("y"));
        assert_eq!(xy, p("x*y"));
        assert_eq!(xy.degree(), Some(2));
    }

    #[test]
    fn format_round_trip() {
        let r = ring();
        for s in ["x^2 - y^2", "-3/2*x*y + 5", "-x", "2*y^3 - x + 1"] {
            let q = p(s);
            assert_eq!(
                Polynomial::parse(&q.format(r.names()), &r).unwrap(),
                q,
                "{s}"
            );
        }
        assert_eq!(p("y - x").format(r.names()), "-x + y");
        assert_eq!(Polynomial::zero().format(r.names()), "0");
    }

    #[test]
    fn parse_errors() {
        let r = ring();
        assert!(Polynomial::parse("x +", &r).is_err());
        assert!(Polynomial::parse("z", &r).is_err());
        assert!(Polynomial::parse("", &r).is_err());
    }

    #[test]
    fn homogeneity_tag() {
        assert_eq!(p("x^2 + x*y").degree(), Some(2));
        assert_eq!(p("x^2 + y").degree(), None);
        assert!(Polynomial::zero().is_homogeneous());
        assert_eq!(p("3").constant_term().unwrap().to_string(), "3");
    }

    #[test]
    fn ring_mismatch() {
        let a = Polynomial::monomial(Monomial::var(2, 0), Field::Rational);
        let b = Polynomial::monomial(Monomial::var(3, 0), Field::Rational);
        assert!(a.try_mul(&b).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = Polynomial> {
            proptest::collection::vec((0u32..3, 0u32..3, -5i64..5), 0..5).prop_map(|ts| {
                let mut q = Polynomial::zero();
                for (a, b, c) in ts {
                    q.add_term(Monomial::new(vec![a, b]), Field::Rational.from_int(c));
                }
                q
            })
        }

        fn homogeneous(d: u32) -> impl Strategy<Value = Polynomial> {
            proptest::collection::vec((0..=d, 1i64..5), 1..4).prop_map(move |ts| {
                let mut q = Polynomial::zero();
                for (a, c) in ts {
                    q.add_term(Monomial::new(vec![a, d - a]), Field::Rational.from_int(c));
                }
                q
            })
        }

        proptest! {
            #[test]
            fn mul_commutative_associative(a in poly(), b in poly(), c in poly()) {
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            }

            #[test]
            fn degree_tags_add(a in homogeneous(2), b in homogeneous(3)) {
                let prod = a.mul(&b);
                prop_assert!(prod.is_zero() || prod.degree() == Some(5));
            }
        }
    }
}
