use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;

/// A standard graded polynomial ring `k[x_1, ..., x_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    names: Vec<String>,
    field: Field,
}

impl Ring {
    pub fn new(names: Vec<String>, field: Field) -> Result<Ring> {
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || !a.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Parse(format!("invalid variable name '{a}'")));
            }
            if a.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                return Err(Error::Parse(format!(
                    "variable name '{a}' starts with a digit"
                )));
            }
            if names[..i].contains(a) {
                return Err(Error::Parse(format!("duplicate variable '{a}'")));
            }
        }
        if !field.is_valid() {
            return Err(Error::Parse(format!("{field} is not a prime field")));
        }
        Ok(Ring { names, field })
    }

    /// `k[x1, ..., xn]` over the given field.
    pub fn standard(n: usize, field: Field) -> Ring {
        Ring {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
            field,
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn with_field(&self, field: Field) -> Ring {
        Ring {
            names: self.names.clone(),
            field,
        }
    }

    pub fn monomial(&self, s: &str) -> Result<Monomial> {
        Monomial::parse(s, &self.names)
    }

    pub fn var(&self, i: usize) -> Monomial {
        Monomial::var(self.nvars(), i)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self != other {
            return Err(Error::RingMismatch(format!(
                "{:?} over {} vs {:?} over {}",
                self.names, self.field, other.names, other.field
            )));
        }
        Ok(())
    }
}
