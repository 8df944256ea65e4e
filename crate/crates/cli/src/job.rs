//! Job documents: a ring, named monomial ideals, one command and its arguments.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;
use transverse::{Field, MonomialIdeal, Ring, DEFAULT_PRIME};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JobError {
    #[error("invalid job document at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_error(field: impl Into<String>, message: impl ToString) -> JobError {
    JobError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Which resolution each factor of a product contributes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Taylor,
    /// The Koszul complex on the minimal generators.
    Koszul,
    #[default]
    Minimize,
}

/// Resolutions that carry a known product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DgMethod {
    #[default]
    Taylor,
    Koszul,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GolodMode {
    Series,
    Resolution,
    #[default]
    Verify,
}

/// Ideal names for commands on two or more factors: either `left`/`right`
/// or an `ideals` list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Factors {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideals: Option<Vec<String>>,
}

impl Factors {
    pub fn names(&self) -> Result<Vec<&str>, JobError> {
        names_of(&self.left, &self.right, &self.ideals)
    }
}

fn yes() -> bool {
    true
}

fn five() -> usize {
    5
}

fn four() -> usize {
    4
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", content = "args", rename_all = "kebab-case")]
pub enum Command {
    CheckTransverse(Factors),
    Resolve(ResolveArgs),
    StarResolve(StarArgs),
    KoszulHomology(IdealArg),
    KunnethVerify(PairArgs),
    Golod(GolodArgs),
    DgVerify(DgArgs),
    ModuleAction(ModuleArgs),
    Obstruction(ObstructionArgs),
    InjectivityVerify(InjectivityArgs),
    AssociativityProbe(ProbeArgs),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealArg {
    pub ideal: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairArgs {
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolveArgs {
    pub ideal: String,
    #[serde(default)]
    pub method: Method,
    #[serde(default = "yes")]
    pub verify: bool,
    /// Internal-degree bound for verification.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarArgs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideals: Option<Vec<String>>,
    #[serde(default)]
    pub method: Method,
    #[serde(default = "yes")]
    pub verify: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GolodArgs {
    pub left: String,
    pub right: String,
    #[serde(default = "five")]
    pub n_max: usize,
    #[serde(default)]
    pub mode: GolodMode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgArgs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideals: Option<Vec<String>>,
    #[serde(default)]
    pub method: DgMethod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleArgs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideals: Option<Vec<String>>,
    #[serde(default)]
    pub method: DgMethod,
    /// Name of the ideal whose generators form the regular sequence.
    pub sequence: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstructionArgs {
    pub module: String,
    pub sequence: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InjectivityArgs {
    pub left: String,
    pub right: String,
    pub sequence: String,
    #[serde(default = "four")]
    pub n_max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeArgs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideals: Option<Vec<String>>,
    #[serde(default)]
    pub method: DgMethod,
    #[serde(default = "four")]
    pub bound: usize,
}

macro_rules! factors_of {
    ($t:ty) => {
        impl $t {
            pub fn factors(&self) -> Factors {
                Factors {
                    left: self.left.clone(),
                    right: self.right.clone(),
                    ideals: self.ideals.clone(),
                }
            }
        }
    };
}

factors_of!(StarArgs);
factors_of!(DgArgs);
factors_of!(ModuleArgs);
factors_of!(ProbeArgs);

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckTransverse(_) => "check-transverse",
            Command::Resolve(_) => "resolve",
            Command::StarResolve(_) => "star-resolve",
            Command::KoszulHomology(_) => "koszul-homology",
            Command::KunnethVerify(_) => "kunneth-verify",
            Command::Golod(_) => "golod",
            Command::DgVerify(_) => "dg-verify",
            Command::ModuleAction(_) => "module-action",
            Command::Obstruction(_) => "obstruction",
            Command::InjectivityVerify(_) => "injectivity-verify",
            Command::AssociativityProbe(_) => "associativity-probe",
        }
    }

    /// Every ideal name the command refers to.
    fn references(&self) -> Result<Vec<&str>, JobError> {
        Ok(match self {
            Command::CheckTransverse(f) => f.names()?,
            Command::Resolve(a) => vec![a.ideal.as_str()],
            Command::KoszulHomology(a) => vec![a.ideal.as_str()],
            Command::KunnethVerify(a) => vec![a.left.as_str(), a.right.as_str()],
            Command::Golod(a) => vec![a.left.as_str(), a.right.as_str()],
            Command::StarResolve(a) => names_of(&a.left, &a.right, &a.ideals)?,
            Command::DgVerify(a) => names_of(&a.left, &a.right, &a.ideals)?,
            Command::ModuleAction(a) => {
                let mut v = names_of(&a.left, &a.right, &a.ideals)?;
                v.push(&a.sequence);
                v
            }
            Command::Obstruction(a) => vec![a.module.as_str(), a.sequence.as_str()],
            Command::InjectivityVerify(a) => {
                vec![a.left.as_str(), a.right.as_str(), a.sequence.as_str()]
            }
            Command::AssociativityProbe(a) => names_of(&a.left, &a.right, &a.ideals)?,
        })
    }

    /// Replaces the command's bound: the homological truncation where there
    /// is one, otherwise the internal-degree bound of verification.
    pub fn set_bound(&mut self, bound: usize) {
        match self {
            Command::Resolve(a) => a.bound = Some(bound as u32),
            Command::StarResolve(a) => a.bound = Some(bound as u32),
            Command::Golod(a) => a.n_max = bound,
            Command::Obstruction(a) => a.n_max = Some(bound),
            Command::InjectivityVerify(a) => a.n_max = bound,
            Command::AssociativityProbe(a) => a.bound = bound,
            _ => {}
        }
    }
}

fn names_of<'a>(
    left: &'a Option<String>,
    right: &'a Option<String>,
    ideals: &'a Option<Vec<String>>,
) -> Result<Vec<&'a str>, JobError> {
    match (left, right, ideals) {
        (Some(l), Some(r), None) => Ok(vec![l, r]),
        (None, None, Some(list)) if list.len() >= 2 => {
            Ok(list.iter().map(String::as_str).collect())
        }
        (None, None, Some(_)) => Err(field_error("args.ideals", "need at least two ideals")),
        _ => Err(field_error(
            "args",
            "give either 'left' and 'right' or an 'ideals' list",
        )),
    }
}

/// A validated job: the ring is well formed, every ideal parses over it, and
/// every name the command uses is defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub ring: Ring,
    pub ideals: BTreeMap<String, MonomialIdeal>,
    pub command: Command,
    pub format: Format,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    vars: Vec<String>,
    #[serde(default = "rational")]
    field: Field,
}

fn rational() -> Field {
    Field::Rational
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    ring: RawRing,
    #[serde(default)]
    ideals: BTreeMap<String, Vec<String>>,
    command: String,
    #[serde(default)]
    args: Map<String, Value>,
    #[serde(default)]
    format: Format,
}

/// Parses and validates a job document.
pub fn parse_input(document: &str) -> Result<JobSpec, JobError> {
    let raw: RawJob = serde_json::from_str(document).map_err(|e| JobError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e
            .to_string()
            .split(" at line ")
            .next()
            .unwrap_or_default()
            .to_string(),
    })?;
    let ring = Ring::new(raw.ring.vars, raw.ring.field).map_err(|e| field_error("ring", e))?;
    let mut ideals = BTreeMap::new();
    for (name, gens) in &raw.ideals {
        for (k, g) in gens.iter().enumerate() {
            transverse::Monomial::parse(g, ring.names())
                .map_err(|e| field_error(format!("ideals.{name}[{k}]"), e))?;
        }
        let ideal = MonomialIdeal::parse(&ring, gens)
            .map_err(|e| field_error(format!("ideals.{name}"), e))?;
        ideals.insert(name.clone(), ideal);
    }
    let tagged = serde_json::json!({ "command": raw.command, "args": Value::Object(raw.args) });
    let command: Command = serde_json::from_value(tagged).map_err(|e| {
        let field = if e.to_string().starts_with("unknown variant") {
            "command"
        } else {
            "args"
        };
        field_error(field, e)
    })?;
    for name in command.references()? {
        if !ideals.contains_key(name) {
            return Err(field_error(
                "args",
                format!("ideal '{name}' is not defined"),
            ));
        }
    }
    Ok(JobSpec {
        ring,
        ideals,
        command,
        format: raw.format,
    })
}

impl JobSpec {
    pub fn ideal(&self, name: &str) -> &MonomialIdeal {
        &self.ideals[name]
    }

    /// Ideals in the order the command names them.
    pub fn factors(&self, f: &Factors) -> Vec<MonomialIdeal> {
        f.names()
            .expect("validated at parse time")
            .into_iter()
            .map(|n| self.ideal(n).clone())
            .collect()
    }

    /// The job as a document; `parse_input` reads it back to an equal job.
    pub fn to_document(&self) -> String {
        let tagged = serde_json::to_value(&self.command).expect("commands serialize");
        let raw = RawJob {
            ring: RawRing {
                vars: self.ring.names().to_vec(),
                field: self.ring.field(),
            },
            ideals: self
                .ideals
                .iter()
                .map(|(k, v)| (k.clone(), v.to_strings(self.ring.names())))
                .collect(),
            command: self.command.name().to_string(),
            args: match tagged.get("args") {
                Some(Value::Object(m)) => m.clone(),
                _ => Map::new(),
            },
            format: self.format,
        };
        serde_json::to_string_pretty(&raw).expect("jobs serialize") + "\n"
    }
}

/// Reads `rational`, `prime` (p = 32003) or `prime:<p>`.
pub fn parse_field(s: &str) -> Result<Field, JobError> {
    let field = match s {
        "rational" => Field::Rational,
        "prime" => Field::Prime(DEFAULT_PRIME),
        other => match other.strip_prefix("prime:").map(str::parse::<u32>) {
            Some(Ok(p)) => Field::Prime(p),
            _ => {
                return Err(field_error(
                    "--field",
                    format!("expected rational, prime or prime:<p>, found '{s}'"),
                ))
            }
        },
    };
    if !field.is_valid() {
        return Err(field_error(
            "--field",
            format!("{field} is not a prime field"),
        ));
    }
    Ok(field)
}
