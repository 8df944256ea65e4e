//! The ten acceptance criteria. Each prints one PASS/FAIL line; run with
//! `cargo test -p transverse --test acceptance -- --nocapture` to see them.

mod common;

use common::{ideal, non_transverse_pairs, ring, transverse_pairs};
use transverse::dg::{
    koszul_dg_product, star_degree_one_product, star_degree_one_product_all, taylor_dg_product,
    ExteriorDga,
};
use transverse::golod::{
    golod_resolution, koszul_homology, kunneth_map, massey_identity_holds, tor_algebra_triviality,
    tor_independence, verify_golod, GolodBasis,
};
use transverse::obstruction::{
    avramov_obstruction, projective_dimension, tor_over_quotient, verify_injectivity,
};
use transverse::resolution::{
    koszul_complex, minimize_complex, taylor_complex, verify_resolution, ResolutionCertificate,
};
use transverse::{Field, GradedFreeComplex, MonomialIdeal, Polynomial, Ring, DEFAULT_PRIME};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn koszul_of(r: &Ring, gens: &[&str]) -> GradedFreeComplex {
    let elems: Vec<Polynomial> = gens
        .iter()
        .map(|g| Polynomial::parse(g, r).unwrap())
        .collect();
    koszul_complex(r, &elems).unwrap()
}

fn flagship() -> (Ring, MonomialIdeal, MonomialIdeal) {
    let r = ring(4);
    let i = ideal(&r, &["x1", "x2"]);
    let j = ideal(&r, &["x3", "x4"]);
    (r, i, j)
}

fn minimal_resolution(r: &Ring, i: &MonomialIdeal) -> GradedFreeComplex {
    minimize_complex(&taylor_complex(r, i).unwrap()).unwrap()
}

fn criterion_1() -> Outcome {
    let (r, i, j) = flagship();
    let ij = i.product(&j).unwrap();
    let s = koszul_of(&r, &["x1", "x2"])
        .star_product(&koszul_of(&r, &["x3", "x4"]))
        .unwrap();
    let cert = verify_resolution(&s, &ij, None).unwrap();
    check(cert.pass(), || format!("flagship certificate: {cert:?}"))?;
    let totals = s.betti_table().map_err(|e| e.to_string())?.totals();
    check(totals == vec![1, 4, 4, 1], || {
        format!("Betti totals {totals:?}")
    })?;
    check(
        s.betti_table().unwrap() == minimal_resolution(&r, &ij).betti_table().unwrap(),
        || "flagship Betti table differs from the minimized Taylor resolution".into(),
    )?;
    let pairs = transverse_pairs(1, 12);
    for (r, i, j) in &pairs {
        let s = minimal_resolution(r, i)
            .star_product(&minimal_resolution(r, j))
            .unwrap();
        let ij = i.product(j).unwrap();
        let cert = verify_resolution(&s, &ij, None).unwrap();
        check(cert.pass(), || {
            format!(
                "{:?} * {:?}: {cert:?}",
                i.to_strings(r.names()),
                j.to_strings(r.names())
            )
        })?;
        check(
            s.betti_table().unwrap() == minimal_resolution(r, &ij).betti_table().unwrap(),
            || {
                format!(
                    "Betti mismatch for {:?} * {:?}",
                    i.to_strings(r.names()),
                    j.to_strings(r.names())
                )
            },
        )?;
    }
    Ok(format!(
        "flagship totals 1 4 4 1; {} generated pairs certified",
        pairs.len()
    ))
}

/// Star product of the Koszul resolutions of two ideals in `n` variables,
/// verified against their product.
fn star_certificate(n: usize, i: &[&str], j: &[&str]) -> ResolutionCertificate {
    let r = ring(n);
    let s = koszul_of(&r, i).star_product(&koszul_of(&r, j)).unwrap();
    verify_resolution(&s, &ideal(&r, i).product(&ideal(&r, j)).unwrap(), None).unwrap()
}

// For n ≥ 1 the star product is the tensor product of the resolutions of I and J
// shifted up by one, so H_1(F*G) = ker(I⊗J → IJ) ≅ Tor_2(R/I,R/J) and
// H_n(F*G) ≅ Tor_{n+1}(R/I,R/J). For (x1,x2),(x2,x3) only Tor_1 is nonzero, so the
// star product resolves IJ and this criterion cannot hold as stated.
fn criterion_2() -> Outcome {
    let cert = star_certificate(3, &["x1", "x2"], &["x2", "x3"]);
    let detail = cert.exact.detail.clone().unwrap_or_default();
    if !cert.pass() && detail.starts_with("H_1 ") {
        return Ok(format!("verification fails: {detail}"));
    }
    let control = star_certificate(2, &["x1", "x2"], &["x1", "x2"]);
    Err(format!(
        "unattainable: the star product for (x1,x2),(x2,x3) is a resolution of IJ (pass = {}), since \
         H_1(F*G) ≅ Tor_2(R/I,R/J) = 0 there; the hypothesis bites through Tor_2, e.g. (x1,x2)·(x1,x2): {}",
        cert.pass(),
        control.exact.detail.unwrap_or_default()
    ))
}

fn kunneth_dims_hold(r: &Ring, i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Vec<usize>, String> {
    let cert = kunneth_map(r, i, j).map_err(|e| e.to_string())?;
    check(cert.pass, || {
        format!("Künneth map not bijective: {:?}", cert.degrees)
    })?;
    let hi = koszul_homology(r, i).unwrap().dims();
    let hj = koszul_homology(r, j).unwrap().dims();
    let hij = koszul_homology(r, &i.product(j).unwrap()).unwrap().dims();
    for (n, &dim) in hij.iter().enumerate().skip(1) {
        let want: usize = (1..=n)
            .map(|a| hi[a] * hj.get(n + 1 - a).copied().unwrap_or(0))
            .sum();
        check(dim == want, || {
            format!("dim H_{n} = {dim} but the formula gives {want}")
        })?;
    }
    Ok(hij[1..].to_vec())
}

fn criterion_3() -> Outcome {
    let (r, i, j) = flagship();
    let dims = kunneth_dims_hold(&r, &i, &j)?;
    check(dims[..3] == [4, 4, 1], || format!("flagship dims {dims:?}"))?;
    let pairs = transverse_pairs(3, 12);
    for (r, i, j) in &pairs {
        kunneth_dims_hold(r, i, j)?;
    }
    Ok(format!(
        "flagship dims 4 4 1; bijective on {} generated pairs",
        pairs.len()
    ))
}

fn criterion_4() -> Outcome {
    let (r, i, j) = flagship();
    let basis = GolodBasis::new(&r, &i, &j).unwrap();
    let k = basis.v.len();
    check(k == 9, || format!("{k} symbols, expected 9"))?;
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    let mut checked = 0;
    for _ in 1..=3 {
        tuples = tuples
            .iter()
            .flat_map(|t| (0..k).map(move |s| [t.clone(), vec![s]].concat()))
            .collect();
        for t in &tuples {
            checked += 1;
            check(massey_identity_holds(&basis, t).unwrap(), || {
                format!("identity fails on {t:?}")
            })?;
        }
    }
    Ok(format!(
        "identity holds on all {checked} tuples of length 1..3"
    ))
}

fn criterion_5() -> Outcome {
    let (r, i, j) = flagship();
    let cert = verify_golod(&r, &i, &j, 5).unwrap();
    check(cert.pass(), || {
        format!("flagship Golod certificate: {cert:?}")
    })?;
    check(cert.ranks == vec![1, 4, 10, 24, 58, 140], || {
        format!("ranks {:?}", cert.ranks)
    })?;
    let s = Ring::new(vec!["x".into(), "y".into()], Field::Rational).unwrap();
    let res = golod_resolution(&s, &ideal(&s, &["x"]), &ideal(&s, &["y"]), 5).unwrap();
    let ranks = res.complex.ranks();
    check(ranks == vec![1, 2, 2, 2, 2, 2], || {
        format!("(x)(y) ranks {ranks:?}")
    })?;
    let cert2 = verify_golod(&s, &ideal(&s, &["x"]), &ideal(&s, &["y"]), 5).unwrap();
    check(cert2.pass(), || format!("(x)(y) certificate: {cert2:?}"))?;
    let tor = tor_algebra_triviality(&r, &i.product(&j).unwrap()).unwrap();
    check(tor.trivial, || {
        format!("Tor algebra product not trivial: {tor:?}")
    })?;
    Ok(format!(
        "ranks 1 4 10 24 58 140 and 1 2 2 2 2 2; {} class pairs multiply to boundaries",
        tor.pairs_checked
    ))
}

fn criterion_6() -> Outcome {
    let r = ring(6);
    let p = |s: &str| Polynomial::parse(s, &r).unwrap();
    let koszul =
        |g: &[&str]| koszul_dg_product(&r, &g.iter().map(|s| p(s)).collect::<Vec<_>>()).unwrap();
    let taylor = |g: &[&str]| taylor_dg_product(&r, &ideal(&r, g)).unwrap();
    let cases: Vec<(&str, Vec<ExteriorDga>)> = vec![
        (
            "K(x1,x2) * K(x3,x4)",
            vec![koszul(&["x1", "x2"]), koszul(&["x3", "x4"])],
        ),
        ("K(x1) * K(x2)", vec![koszul(&["x1"]), koszul(&["x2"])]),
        (
            "T(x1^2,x1*x2) * K(x3,x4,x5)",
            vec![taylor(&["x1^2", "x1*x2"]), koszul(&["x3", "x4", "x5"])],
        ),
        (
            "T(x1*x2,x2*x3,x1*x3) * T(x4^2,x5)",
            vec![
                taylor(&["x1*x2", "x2*x3", "x1*x3"]),
                taylor(&["x4^2", "x5"]),
            ],
        ),
        (
            "T(x1,x2^2) * T(x3*x4,x4*x5,x5*x6)",
            vec![
                taylor(&["x1", "x2^2"]),
                taylor(&["x3*x4", "x4*x5", "x5*x6"]),
            ],
        ),
        (
            "K(x1,x2) * T(x3,x4) * T(x5^2,x5*x6)",
            vec![
                koszul(&["x1", "x2"]),
                taylor(&["x3", "x4"]),
                taylor(&["x5^2", "x5*x6"]),
            ],
        ),
    ];
    let mut pairs = 0;
    for (name, factors) in &cases {
        let prod = star_degree_one_product_all(factors).map_err(|e| format!("{name}: {e}"))?;
        let cert = prod.certify();
        check(cert.pass(), || format!("{name}: {cert:?}"))?;
        pairs += cert.pairs;
    }
    // the 3-fold product's ideals are sequentially transverse
    let ideals = [
        ideal(&r, &["x1", "x2"]),
        ideal(&r, &["x3", "x4"]),
        ideal(&r, &["x5^2", "x5*x6"]),
    ];
    check(
        transverse::ideal::is_sequentially_transverse(&ideals).unwrap(),
        || "3-fold family not sequential".into(),
    )?;
    let f = koszul(&["x1", "x2"]);
    let g = koszul(&["x3", "x4"]);
    star_degree_one_product(f.complex(), g.complex(), &f.degree_one(), &g.degree_one())
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "(a) and (b) hold on all {pairs} basis pairs across {} star products",
        cases.len()
    ))
}

fn criterion_7() -> Outcome {
    let (r, i, j) = flagship();
    let a = ideal(&r, &["x1*x3"]);
    let cert = verify_injectivity(&r, &a, &i, &j, 4).unwrap();
    check(cert.pass, || {
        format!(
            "not injective in degrees {:?}\n{}",
            cert.failures,
            cert.report.render()
        )
    })?;
    check(cert.report.vanishes(), || {
        format!("nonzero obstruction\n{}", cert.report.render())
    })?;
    let ranks: Vec<String> = cert
        .report
        .rows
        .iter()
        .filter(|r| r.i >= 2)
        .map(|r| format!("{}/{}", r.rank, r.tor_r))
        .collect();
    Ok(format!(
        "injective for i = 2..4 (rank/dim {}), all o_i = 0",
        ranks.join(" ")
    ))
}

fn criterion_8() -> Outcome {
    let r = ring(4);
    let m = ideal(&r, &["x1^2", "x1*x2", "x2*x3", "x3*x4", "x4^2"]);
    let a = ideal(&r, &["x1^2", "x4^2"]);
    let pd = projective_dimension(&r, &m).unwrap();
    let report = avramov_obstruction(&r, &a, &m, None).unwrap();
    check(report.well_defined(), || {
        "product subspace does not map to zero".into()
    })?;
    let witness = report
        .first_nonzero()
        .cloned()
        .ok_or_else(|| format!("all obstructions vanish\n{}", report.render()))?;
    check(witness.i <= pd, || {
        format!("witness degree {} exceeds pd {pd}", witness.i)
    })?;
    // regression values from the brute-force pipeline
    check(
        pd == 4 && witness.i == 4 && witness.obstruction == 1,
        || format!("witness changed\n{}", report.render()),
    )?;
    Ok(format!(
        "o_{} = {} with pd(R/I) = {pd}",
        witness.i, witness.obstruction
    ))
}

fn criterion_9() -> Outcome {
    let transverse = transverse_pairs(9, 12);
    for (r, i, j) in &transverse {
        let t = tor_independence(r, i, j).unwrap();
        check(t.independent, || {
            format!("Tor nonzero for a transverse pair: {:?}", t.first_nonzero)
        })?;
    }
    let (r, i, j) = flagship();
    check(tor_independence(&r, &i, &j).unwrap().independent, || {
        "flagship not Tor-independent".into()
    })?;
    let others = non_transverse_pairs(10, 8);
    for (r, i, j) in &others {
        let t = tor_independence(r, i, j).unwrap();
        check(t.first_nonzero.is_some_and(|(k, _, _)| k == 1), || {
            format!(
                "{:?}, {:?}: first nonzero Tor {:?}",
                i.to_strings(r.names()),
                j.to_strings(r.names()),
                t.first_nonzero
            )
        })?;
    }
    Ok(format!(
        "{} transverse pairs Tor-independent; Tor_1 ≠ 0 on {} non-transverse pairs",
        transverse.len() + 1,
        others.len()
    ))
}

/// Every dimension the suite reports, for one field.
fn dimension_outputs(field: Field) -> Vec<usize> {
    let mut out = Vec::new();
    let (r, i, j) = flagship();
    let r = r.with_field(field);
    let ij = i.product(&j).unwrap();
    out.extend(koszul_homology(&r, &ij).unwrap().dims());
    out.extend(verify_golod(&r, &i, &j, 4).unwrap().ranks);
    for d in kunneth_map(&r, &i, &j).unwrap().degrees {
        out.extend([d.source_dim, d.target_dim, d.rank]);
    }
    let r4 = ring(4).with_field(field);
    let m = ideal(&r4, &["x1^2", "x1*x2", "x2*x3", "x3*x4", "x4^2"]);
    let a = ideal(&r4, &["x1^2", "x4^2"]);
    for row in avramov_obstruction(&r4, &a, &m, None).unwrap().rows {
        out.extend([row.tor_r, row.prod, row.tor_s, row.rank, row.obstruction]);
    }
    out.extend(tor_over_quotient(&r4, &ideal(&r4, &["x1*x3"]), &ij, 4).unwrap());
    for (r, i, j) in transverse_pairs(1, 12) {
        let r = r.with_field(field);
        let s = minimal_resolution(&r, &i)
            .star_product(&minimal_resolution(&r, &j))
            .unwrap();
        out.extend(s.ranks());
        out.extend(koszul_homology(&r, &i.product(&j).unwrap()).unwrap().dims());
    }
    out
}

fn criterion_10() -> Outcome {
    let mut examples = 0;
    let (r, i, j) = flagship();
    let mut all = vec![(r, i, j)];
    all.extend(transverse_pairs(1, 12));
    for (r, i, j) in &all {
        let ij = i.product(j).unwrap();
        let betti = minimal_resolution(r, &ij).betti_table().unwrap();
        let star = minimal_resolution(r, i)
            .star_product(&minimal_resolution(r, j))
            .unwrap()
            .betti_table()
            .unwrap();
        let koszul: Vec<((usize, u32), usize)> = koszul_homology(r, &ij).unwrap().graded_dims();
        let from_betti: Vec<((usize, u32), usize)> =
            betti.entries().filter(|((h, _), _)| *h > 0).collect();
        check(betti == star, || {
            format!(
                "star Betti table differs for {:?}",
                ij.to_strings(r.names())
            )
        })?;
        check(koszul == from_betti, || {
            format!("Koszul homology differs for {:?}", ij.to_strings(r.names()))
        })?;
        let hij = kunneth_dims_hold(r, i, j)?;
        check(
            hij == betti.totals()[1..]
                .iter()
                .copied()
                .chain(std::iter::repeat(0))
                .take(hij.len())
                .collect::<Vec<_>>(),
            || {
                format!(
                    "Künneth prediction differs from Betti totals for {:?}",
                    ij.to_strings(r.names())
                )
            },
        )?;
        examples += 1;
    }
    let rational = dimension_outputs(Field::Rational);
    let prime = dimension_outputs(Field::Prime(DEFAULT_PRIME));
    check(rational == prime, || {
        "rational and prime-field dimensions differ".into()
    })?;
    Ok(format!("{examples} examples agree across pipelines; {} dimensions agree over Q and F_{DEFAULT_PRIME}", rational.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("1 star-product resolution", criterion_1),
        ("2 non-transversality control", criterion_2),
        ("3 Künneth isomorphism", criterion_3),
        ("4 trivial Massey operation", criterion_4),
        ("5 Golod resolution", criterion_5),
        ("6 degree-one product", criterion_6),
        ("7 obstruction vanishing", criterion_7),
        ("8 obstruction non-vanishing", criterion_8),
        ("9 Tor-independence", criterion_9),
        ("10 cross-pipeline consistency", criterion_10),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = std::time::Instant::now();
        match run() {
            Ok(msg) => println!("PASS [{name}] {msg} ({:.2?})", start.elapsed()),
            Err(msg) => {
                println!("FAIL [{name}] {msg}");
                failed.push(name);
            }
        }
    }
    assert_eq!(
        failed, UNATTAINABLE,
        "failed criteria differ from the analysed ones"
    );
}

/// Criteria whose statement is contradicted by an independent argument; the
/// analysed behaviour is pinned by `non_transverse_star_products_follow_tor_2`.
const UNATTAINABLE: &[&str] = &["2 non-transversality control"];

#[test]
fn non_transverse_star_products_follow_tor_2() {
    // Tor_2(R/(x1,x2), R/(x2,x3)) = 0: the Koszul complex of (x2,x3) over k[x3]
    // is x3 in degree 1 only, so the star product is exact despite Tor_1 ≠ 0
    assert!(star_certificate(3, &["x1", "x2"], &["x2", "x3"]).pass());
    let r = ring(3);
    assert!(
        !tor_independence(&r, &ideal(&r, &["x1", "x2"]), &ideal(&r, &["x2", "x3"]))
            .unwrap()
            .independent
    );
    // Tor_2(k, k) = k over k[x1,x2] in internal degree 2
    let cert = star_certificate(2, &["x1", "x2"], &["x1", "x2"]);
    assert!(!cert.pass());
    assert_eq!(
        cert.exact.detail.as_deref(),
        Some("H_1 has dimension 1 in degree 2")
    );
}
