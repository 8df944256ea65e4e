//! Runs a job and renders its report.

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;
use transverse::complex::star_product_all;
use transverse::dg::{
    associativity_probe, koszul_dg_product, koszul_module_action, star_degree_one_product_all,
    taylor_dg_product, DegreeOneProduct, ExteriorDga,
};
use transverse::golod::{
    golod_poincare, golod_resolution, koszul_homology, kunneth_map, verify_golod,
};
use transverse::ideal::{sequential_transversality, transversality};
use transverse::koszul::KoszulAlgebra;
use transverse::obstruction::{avramov_obstruction, verify_injectivity};
use transverse::resolution::{
    koszul_complex, minimize_complex, taylor_complex, verify_resolution, Clause,
};
use transverse::{BettiTable, GradedFreeComplex, Monomial, MonomialIdeal, Polynomial, Ring};

use crate::job::{Command, DgMethod, Factors, Format, GolodMode, JobError, JobSpec, Method};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Job(#[from] JobError),

    #[error("{command}: {source}")]
    Compute {
        command: &'static str,
        source: transverse::Error,
    },
}

impl CliError {
    /// 1 when a certification failed, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute {
                source: transverse::Error::Certification(_),
                ..
            } => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(pass: bool) -> Status {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    fn word(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

/// A command's result in both output formats. An empty report renders as
/// nothing in either format.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub status: Status,
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn empty() -> Report {
        Report {
            status: Status::Pass,
            json: Value::Null,
            text: String::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.json.is_null() && self.text.is_empty()
    }
}

pub fn render_report(report: &Report, format: Format) -> String {
    if report.is_empty() {
        return String::new();
    }
    match format {
        Format::Json => {
            serde_json::to_string_pretty(&report.json).expect("reports serialize") + "\n"
        }
        Format::Text => report.text.clone(),
    }
}

struct Ctx<'a> {
    spec: &'a JobSpec,
    command: &'static str,
}

impl Ctx<'_> {
    fn ring(&self) -> &Ring {
        &self.spec.ring
    }

    fn names(&self) -> &[String] {
        self.spec.ring.names()
    }

    fn lift<T>(&self, r: transverse::Result<T>) -> Result<T, CliError> {
        r.map_err(|source| CliError::Compute {
            command: self.command,
            source,
        })
    }

    fn show(&self, name: &str) -> String {
        format!("{name} = {}", self.spec.ideal(name).format(self.names()))
    }

    fn show_all(&self, f: &Factors) -> String {
        f.names()
            .expect("validated")
            .iter()
            .map(|n| self.show(n))
            .collect::<Vec<_>>()
            .join(", ")
    }

    fn gens(&self, ideal: &MonomialIdeal) -> Vec<Polynomial> {
        ideal
            .gens()
            .iter()
            .map(|m| Polynomial::monomial(m.clone(), self.ring().field()))
            .collect()
    }

    fn resolution(
        &self,
        ideal: &MonomialIdeal,
        method: Method,
    ) -> Result<GradedFreeComplex, CliError> {
        self.lift(match method {
            Method::Taylor => taylor_complex(self.ring(), ideal),
            Method::Minimize => {
                taylor_complex(self.ring(), ideal).and_then(|t| minimize_complex(&t))
            }
            Method::Koszul => koszul_complex(self.ring(), &self.gens(ideal)),
        })
    }

    fn dga(&self, ideal: &MonomialIdeal, method: DgMethod) -> Result<ExteriorDga, CliError> {
        self.lift(match method {
            DgMethod::Taylor => taylor_dg_product(self.ring(), ideal),
            DgMethod::Koszul => koszul_dg_product(self.ring(), &self.gens(ideal)),
        })
    }

    /// The degree-one product on the star product of the factors, which must
    /// be sequentially transverse.
    fn star_product_structure(
        &self,
        f: &Factors,
        method: DgMethod,
    ) -> Result<DegreeOneProduct, CliError> {
        let ideals = self.spec.factors(f);
        if let Err(step) = self.lift(sequential_transversality(&ideals))? {
            return Err(CliError::Compute {
                command: self.command,
                source: transverse::Error::Domain(format!(
                    "the ideals are not sequentially transverse (fails at factor {})",
                    step + 1
                )),
            });
        }
        let factors = ideals
            .iter()
            .map(|i| self.dga(i, method))
            .collect::<Result<Vec<_>, _>>()?;
        self.lift(star_degree_one_product_all(&factors))
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn clause_line(name: &str, c: &Clause) -> String {
    match (&c.detail, c.pass) {
        (Some(d), false) => format!("  {name}: FAIL ({d})\n"),
        (_, pass) => format!("  {name}: {}\n", Status::of(pass).word()),
    }
}

fn table(c: &GradedFreeComplex) -> (&'static str, BettiTable) {
    match c.betti_table() {
        Ok(b) => ("betti", b),
        Err(_) => ("graded ranks", c.graded_ranks()),
    }
}

/// Text and JSON for a resolution, optionally verified against `ideal`.
fn resolution_report(
    ctx: &Ctx,
    heading: String,
    c: &GradedFreeComplex,
    ideal: &MonomialIdeal,
    verify: bool,
    bound: Option<u32>,
    mut json: Value,
) -> Result<Report, CliError> {
    let (kind, betti) = table(c);
    let mut text = format!(
        "{heading}\n{kind}: {}\n{}",
        join(&betti.totals()),
        betti.render()
    );
    json["ranks"] = json!(c.ranks());
    json["minimal"] = json!(c.is_minimal());
    json[kind.replace(' ', "_")] = json!(betti);
    json["complex"] = json!(c.to_doc());
    let mut status = Status::Pass;
    if verify {
        let cert = ctx.lift(verify_resolution(c, ideal, bound))?;
        status = Status::of(cert.pass());
        text.push_str(&format!("verification: {}\n", status.word()));
        for (name, clause) in [
            ("valid", &cert.valid),
            ("exact", &cert.exact),
            ("cokernel", &cert.cokernel),
            ("taylor oracle", &cert.taylor_oracle),
        ] {
            text.push_str(&clause_line(name, clause));
        }
        json["verification"] = json!(cert);
        json["pass"] = json!(cert.pass());
    }
    Ok(Report { status, json, text })
}

pub fn run(spec: &JobSpec) -> Result<Report, CliError> {
    let ctx = Ctx {
        spec,
        command: spec.command.name(),
    };
    let names = ctx.names();
    let field = spec.ring.field().to_string();
    let mut report = match &spec.command {
        Command::CheckTransverse(f) => {
            let ideals = spec.factors(f);
            let labels = f.names()?;
            let (transverse, failing) = if ideals.len() == 2 {
                (
                    ctx.lift(transversality(&ideals[0], &ideals[1]))?.transverse,
                    None,
                )
            } else {
                match ctx.lift(sequential_transversality(&ideals))? {
                    Ok(()) => (true, None),
                    Err(step) => (false, Some(step)),
                }
            };
            let mut text = format!("{}\n", ctx.show_all(f));
            let mut json = json!({ "ideals": labels, "transverse": transverse });
            if transverse {
                text.push_str(if ideals.len() == 2 {
                    "TRANSVERSE\n"
                } else {
                    "SEQUENTIALLY TRANSVERSE\n"
                });
            } else {
                // witness for the first failing step: the product so far against the next factor
                let step = failing.unwrap_or(1);
                let prefix = ideals[1..step]
                    .iter()
                    .try_fold(ideals[0].clone(), |acc, i| acc.product(i))
                    .map_err(|source| CliError::Compute {
                        command: ctx.command,
                        source,
                    })?;
                let t = ctx.lift(transversality(&prefix, &ideals[step]))?;
                let witness =
                    Monomial::new(t.witness.expect("non-transverse pairs carry a witness"))
                        .format(names);
                text.push_str("NOT TRANSVERSE\n");
                if ideals.len() > 2 {
                    text.push_str(&format!(
                        "fails at factor {} ({})\n",
                        step + 1,
                        labels[step]
                    ));
                    json["failing_factor"] = json!(labels[step]);
                }
                text.push_str(&format!("witness: {witness}\n"));
                json["witness"] = json!(witness);
            }
            Report {
                status: Status::of(transverse),
                json,
                text,
            }
        }
        Command::Resolve(a) => {
            let ideal = spec.ideal(&a.ideal);
            let c = ctx.resolution(ideal, a.method)?;
            let method = serde_json::to_value(a.method).expect("methods serialize");
            let heading = format!(
                "{} ({} resolution)",
                ctx.show(&a.ideal),
                method.as_str().unwrap_or_default()
            );
            let json = json!({ "ideal": a.ideal, "method": method, "field": field });
            resolution_report(&ctx, heading, &c, ideal, a.verify, a.bound, json)?
        }
        Command::StarResolve(a) => {
            let f = a.factors();
            let ideals = spec.factors(&f);
            let complexes = ideals
                .iter()
                .map(|i| ctx.resolution(i, a.method))
                .collect::<Result<Vec<_>, _>>()?;
            let c = ctx.lift(star_product_all(&complexes))?;
            let product = ideals[1..]
                .iter()
                .try_fold(ideals[0].clone(), |acc, i| acc.product(i))
                .map_err(|source| CliError::Compute {
                    command: ctx.command,
                    source,
                })?;
            let method = serde_json::to_value(a.method).expect("methods serialize");
            let heading = format!(
                "star product of {} ({} factors)",
                ctx.show_all(&f),
                method.as_str().unwrap_or_default()
            );
            let json = json!({ "ideals": f.names()?, "method": method, "field": field, "product": product.to_strings(names) });
            resolution_report(&ctx, heading, &c, &product, a.verify, a.bound, json)?
        }
        Command::KoszulHomology(a) => {
            let ideal = spec.ideal(&a.ideal);
            let h = ctx.lift(koszul_homology(ctx.ring(), ideal))?;
            let alg = KoszulAlgebra::new(ctx.ring());
            let table =
                BettiTable::from_entries(std::iter::once(((0, 0), 1)).chain(h.graded_dims()));
            let mut text = format!(
                "Koszul homology of R/I, {}\ndims: {}\n{}",
                ctx.show(&a.ideal),
                join(&h.dims()),
                table.render()
            );
            let classes: Vec<Value> = h
                .classes
                .iter()
                .map(|c| {
                    let rep = alg.format(&c.representative);
                    text.push_str(&format!("  H_{} degree {}: {}\n", c.i, c.t, rep));
                    json!({ "i": c.i, "t": c.t, "representative": rep })
                })
                .collect();
            Report {
                status: Status::Pass,
                json: json!({ "ideal": a.ideal, "field": field, "dims": h.dims(), "graded": table, "classes": classes }),
                text,
            }
        }
        Command::KunnethVerify(a) => {
            let (i, j) = (spec.ideal(&a.left), spec.ideal(&a.right));
            let cert = ctx.lift(kunneth_map(ctx.ring(), i, j))?;
            let mut text = format!(
                "Künneth map for {}, {}\n n | source | target | rank | iso\n",
                ctx.show(&a.left),
                ctx.show(&a.right)
            );
            for d in &cert.degrees {
                text.push_str(&format!(
                    "{:>2} | {:>6} | {:>6} | {:>4} | {}\n",
                    d.n,
                    d.source_dim,
                    d.target_dim,
                    d.rank,
                    if d.iso { "yes" } else { "no" }
                ));
            }
            text.push_str(&format!("verification: {}\n", Status::of(cert.pass).word()));
            Report {
                status: Status::of(cert.pass),
                json: json!({ "left": a.left, "right": a.right, "field": field, "certificate": cert }),
                text,
            }
        }
        Command::Golod(a) => {
            let (i, j) = (spec.ideal(&a.left), spec.ideal(&a.right));
            let heading = format!(
                "Golod construction for {}, {}\n",
                ctx.show(&a.left),
                ctx.show(&a.right)
            );
            match a.mode {
                GolodMode::Series => {
                    let s = ctx.lift(golod_poincare(ctx.ring(), i, j, a.n_max))?;
                    let text = format!(
                        "{heading}series: {}\ncoefficients: {}\n",
                        s.format(),
                        join(&s.coefficients)
                    );
                    Report {
                        status: Status::Pass,
                        json: json!({ "mode": "series", "series": s }),
                        text,
                    }
                }
                GolodMode::Resolution => {
                    let res = ctx.lift(golod_resolution(ctx.ring(), i, j, a.n_max))?;
                    let ranks = res.complex.ranks();
                    let mut text = format!("{heading}ranks: {}\n", join(&ranks));
                    for k in 0..=res.complex.length().min(2) {
                        text.push_str(&format!("  T_{k}: {}\n", res.complex.labels(k).join(" ")));
                    }
                    Report {
                        status: Status::Pass,
                        json: json!({ "mode": "resolution", "ranks": ranks, "complex": res.complex.to_doc() }),
                        text,
                    }
                }
                GolodMode::Verify => {
                    let cert = ctx.lift(verify_golod(ctx.ring(), i, j, a.n_max))?;
                    let status = Status::of(cert.pass());
                    let mut text = format!(
                        "{heading}ranks: {}\nseries: {}\ncoefficients: {}\nverification: {}\n",
                        join(&cert.ranks),
                        cert.series.format(),
                        join(&cert.series.coefficients),
                        status.word()
                    );
                    for (name, clause) in [
                        ("ranks match series", &cert.ranks_match),
                        ("valid", &cert.valid),
                        ("minimal", &cert.minimal),
                        ("exact", &cert.exact),
                        ("residue field", &cert.residue_field),
                    ] {
                        text.push_str(&clause_line(name, clause));
                    }
                    Report {
                        status,
                        json: json!({ "mode": "verify", "certificate": cert, "pass": cert.pass() }),
                        text,
                    }
                }
            }
        }
        Command::DgVerify(a) => {
            let f = a.factors();
            let prod = ctx.star_product_structure(&f, a.method)?;
            let cert = prod.certify();
            let status = Status::of(cert.pass());
            let mut text = format!(
                "degree-one product on the star product of {}\nranks: {}\nbasis pairs: {}\nverification: {}\n",
                ctx.show_all(&f),
                join(&prod.complex().ranks()),
                cert.pairs,
                status.word()
            );
            text.push_str(&clause_line("leibniz", &cert.leibniz));
            text.push_str(&clause_line("square zero", &cert.square_zero));
            text.push_str(&clause_line("polarized (reported only)", &cert.polarized));
            Report {
                status,
                json: json!({ "ideals": f.names()?, "certificate": cert, "pass": cert.pass() }),
                text,
            }
        }
        Command::ModuleAction(a) => {
            let f = a.factors();
            let prod = ctx.star_product_structure(&f, a.method)?;
            let sequence = ctx.gens(spec.ideal(&a.sequence));
            let action = ctx.lift(koszul_module_action(&prod, &sequence))?;
            let cert = action.certify();
            let status = Status::of(cert.pass());
            let mut text = format!(
                "Koszul action of {} on the star product of {}\n",
                ctx.show(&a.sequence),
                ctx.show_all(&f)
            );
            for (k, p) in cert.phi1.iter().enumerate() {
                text.push_str(&format!("  phi1(e{}) = {p}\n", k + 1));
            }
            text.push_str(&format!("verification: {}\n", status.word()));
            text.push_str(&clause_line("leibniz", &cert.leibniz));
            text.push_str(&clause_line("squares", &cert.squares));
            text.push_str(&clause_line("anticommute", &cert.anticommute));
            Report {
                status,
                json: json!({ "ideals": f.names()?, "sequence": a.sequence, "certificate": cert, "pass": cert.pass() }),
                text,
            }
        }
        Command::Obstruction(a) => {
            let (m, seq) = (spec.ideal(&a.module), spec.ideal(&a.sequence));
            let report = ctx.lift(avramov_obstruction(ctx.ring(), seq, m, a.n_max))?;
            let mut text = format!(
                "obstructions for R/M, {}, sequence {}\n{}",
                ctx.show(&a.module),
                ctx.show(&a.sequence),
                report.render()
            );
            match report.first_nonzero() {
                Some(row) => text.push_str(&format!(
                    "first nonzero: o_{} = {}\n",
                    row.i, row.obstruction
                )),
                None => text.push_str("all obstructions vanish\n"),
            }
            if !report.well_defined() {
                text.push_str("product subspace does not map to zero: FAIL\n");
            }
            let status = Status::of(report.well_defined());
            Report {
                status,
                json: json!({ "field": field, "report": report, "vanishes": report.vanishes() }),
                text,
            }
        }
        Command::InjectivityVerify(a) => {
            let (i, j, seq) = (
                spec.ideal(&a.left),
                spec.ideal(&a.right),
                spec.ideal(&a.sequence),
            );
            let cert = ctx.lift(verify_injectivity(ctx.ring(), seq, i, j, a.n_max))?;
            let status = Status::of(cert.pass);
            let mut text = format!(
                "Tor maps for R/IJ, {}, {}, sequence {}\n{}",
                ctx.show(&a.left),
                ctx.show(&a.right),
                ctx.show(&a.sequence),
                cert.report.render()
            );
            if !cert.failures.is_empty() {
                text.push_str(&format!(
                    "not injective in degrees: {}\n",
                    join(&cert.failures)
                ));
            }
            text.push_str(&format!(
                "injective for 2 <= i <= {}: {}\n",
                a.n_max,
                status.word()
            ));
            Report {
                status,
                json: json!({ "certificate": cert }),
                text,
            }
        }
        Command::AssociativityProbe(a) => {
            let f = a.factors();
            let prod = ctx.star_product_structure(&f, a.method)?;
            let report = associativity_probe(&prod, a.bound);
            if report.degrees.is_empty() {
                return Ok(Report::empty());
            }
            let found = report.associative_extension_found();
            let text = format!(
                "associativity probe on the star product of {}\n{}associative extension found: {}\n",
                ctx.show_all(&f),
                report.render(),
                if found { "yes" } else { "no" }
            );
            Report {
                status: Status::Pass,
                json: json!({ "report": report, "associative_extension_found": found }),
                text,
            }
        }
    };
    if let Value::Object(m) = &mut report.json {
        m.insert("command".into(), json!(ctx.command));
        m.insert("status".into(), json!(report.status));
    }
    Ok(report)
}
