//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command as Process, ExitCode};

use common::{constant_curvature, diagonal_frame, ex, expr_strategy, geometry, instance, k, q, unit};
use kenmotsu::cli::{self, Command, Options};
use kenmotsu::contact::{identity_suite, star_ricci_formula, star_scalar};
use kenmotsu::frame::{checks, multi_indices};
use kenmotsu::soliton::{
    classify_torse_forming, conformal_killing, eta_einstein, solve_omega_trace, specialize_theta, ConformalClass,
    TorseOutcome, TorseSubtype,
};
use kenmotsu::{Curvature, Expr};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use serde_json::Value;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e(i: usize) -> Vec<Expr> {
    unit(5, i - 1)
}

fn neg(v: Vec<Expr>) -> Vec<Expr> {
    v.iter().map(|x| -x).collect()
}

fn connection_table() -> Outcome {
    let (g, _) = geometry("kenmotsu5");
    for i in 1..=5 {
        for j in 1..=5 {
            let want = match (i, j) {
                (5, _) => vec![k(0); 5],
                (a, b) if a == b => neg(e(5)),
                (a, 5) => e(a),
                _ => vec![k(0); 5],
            };
            let got = g.curvature.connection.covariant(i - 1, j - 1);
            ensure(got == want, format!("nabla_e{i} e{j} = {got:?}"))?;
        }
    }
    Ok("25 entries".into())
}

fn curvature_components() -> Outcome {
    let (g, _) = geometry("kenmotsu5");
    let listed: [((usize, usize, usize), Vec<Expr>); 20] = [
        ((1, 2, 2), neg(e(1))),
        ((1, 3, 3), neg(e(1))),
        ((1, 4, 4), neg(e(1))),
        ((1, 5, 5), neg(e(1))),
        ((1, 2, 1), e(2)),
        ((1, 3, 1), e(3)),
        ((1, 4, 1), e(4)),
        ((1, 5, 1), e(5)),
        ((2, 3, 2), e(3)),
        ((2, 4, 2), e(4)),
        ((2, 5, 2), e(5)),
        ((2, 3, 3), neg(e(2))),
        ((2, 4, 4), neg(e(2))),
        ((2, 5, 5), neg(e(2))),
        ((3, 4, 3), e(4)),
        ((3, 5, 3), e(5)),
        ((3, 4, 4), neg(e(3))),
        ((4, 5, 4), e(5)),
        ((5, 3, 5), e(3)),
        ((5, 4, 5), e(4)),
    ];
    for ((a, b, c), want) in &listed {
        let got = g.curvature.apply_riemann(&e(*a), &e(*b), &e(*c));
        ensure(&got == want, format!("R(e{a}, e{b}) e{c}"))?;
    }
    for idx in multi_indices(4, 5) {
        let want = constant_curvature(-1, idx[0], idx[1], idx[2], idx[3]);
        ensure(g.curvature.riemann.get(&idx) == &want, format!("R{idx:?} differs from constant curvature -1"))?;
    }
    Ok(format!("{} listed components, 625 closed-form entries", listed.len()))
}

fn scalar_values() -> Outcome {
    let (g, _) = geometry("kenmotsu5");
    let a = g.contact().map_err(|e| e.to_string())?;
    let h = g.manifold.metric_tensor();
    ensure(g.curvature.ricci == h.scale(&k(-4)), "Ric != -4h")?;
    ensure(g.curvature.scalar == k(-20), "R != -20")?;
    let want = h.scale(&k(-1)).add(&a.eta_eta());
    let direct = g.star_ricci.clone().ok_or("no T*")?;
    ensure(direct == want, "T* (trace definition) != -h + eta(x)eta")?;
    ensure(star_ricci_formula(&g.manifold, a, &g.curvature.ricci) == want, "T* (Kenmotsu formula) != -h + eta(x)eta")?;
    let s = star_scalar(&g.manifold, a, &direct, &g.curvature.scalar);
    ensure(s.trace == k(-4), "R* != -4")?;
    ensure(s.consistent(), "R* != R + 4n^2")?;
    Ok("Ric = -4h, R = -20, T* = -h + eta(x)eta both ways, R* = -4 = R + 4n^2".into())
}

fn identity_suites() -> Outcome {
    for name in ["kenmotsu5", "kenmotsu3"] {
        let (g, _) = geometry(name);
        let suite = identity_suite(&g.manifold, g.contact().map_err(|e| e.to_string())?, &g.curvature);
        ensure(!suite.informational, format!("{name} is not Kenmotsu"))?;
        ensure(suite.identities.len() == 8, format!("{name}: {} identities", suite.identities.len()))?;
        for c in &suite.identities {
            ensure(c.holds(), format!("{name}: {} residual nonzero", c.id))?;
        }
    }
    Ok("2.7..2.14 vanish on kenmotsu5 and kenmotsu3".into())
}

fn lie_derivative() -> Outcome {
    let (g, l) = geometry("kenmotsu5");
    let v = &l.fields["V"];
    let a = g.contact().map_err(|e| e.to_string())?;
    let lie = g.lie_derivative(v).map_err(|e| e.to_string())?;
    ensure(lie == g.manifold.metric_tensor().sub(&a.eta_eta()).scale(&k(4)), "L_V h != 4(h - eta(x)eta)")?;
    ensure(g.manifold.trace(&lie) == k(16), "trace != 16")?;
    ensure(g.manifold.divergence(&g.curvature.connection, v) == k(8), "div V != 8")?;
    Ok("L_V h = 4(h - eta(x)eta), trace 16, div 8".into())
}

fn omega_solving() -> Outcome {
    let (g, l) = geometry("kenmotsu5");
    let v = l.fields["V"].clone();
    let printed = solve_omega_trace(&g, &instance("STAR_KAPPA_RBS_1_9", v.clone())).map_err(|e| e.to_string())?;
    // 16 kappa - 8 - 10 Omega + 20 theta = 0
    let oracle = ex("16/10*kappa - 8/10 + 20/10*theta");
    ensure(printed == oracle, format!("1_9: {printed}"))?;
    let variant = solve_omega_trace(&g, &instance("STAR_KAPPA_RBS_5_7", v)).map_err(|e| e.to_string())?;
    ensure(variant == ex("4/5 + 2*theta - 8/5*kappa"), format!("5_7: {variant}"))?;
    for (theta, want) in [(0, "4/5 - 8/5*kappa"), (2, "24/5 - 8/5*kappa"), (1, "14/5 - 8/5*kappa")] {
        let s = specialize_theta(&variant, q(theta)).map_err(|e| e.to_string())?;
        ensure(s.omega == ex(want), format!("theta = {theta}: {}", s.omega))?;
    }
    Ok(format!("1_9: {printed}; 5_7: {variant}"))
}

fn classification() -> Outcome {
    let (g, l) = geometry("kenmotsu5");
    let a = g.contact().map_err(|e| e.to_string())?;
    let zeta = a.zeta().to_vec();
    let TorseOutcome::Certified(c) = classify_torse_forming(&g, &zeta).map_err(|e| e.to_string())? else {
        return Err("zeta not torse-forming".into());
    };
    let minus_eta: Vec<Expr> = a.eta().iter().map(|x| -x).collect();
    ensure(c.psi == k(1), "psi != 1")?;
    ensure(c.theta == minus_eta, "theta form != -eta")?;
    ensure(c.subtype == TorseSubtype::TorseForming, format!("subtype {:?}", c.subtype))?;
    let d = eta_einstein(&g.manifold, a.eta(), &g.curvature.ricci)
        .map_err(|e| e.to_string())?
        .ok_or("Ricci not eta-Einstein")?;
    ensure(d.alpha == k(-4) && d.beta.is_zero(), format!("alpha = {}, beta = {}", d.alpha, d.beta))?;
    let ck = conformal_killing(&g, &l.fields["V"]).map_err(|e| e.to_string())?;
    ensure(ck.class == ConformalClass::None, format!("V conformal class {:?}", ck.class))?;
    Ok("zeta torse_forming (psi 1, -eta); Ric = -4h einstein; V not conformal".into())
}

fn property_suite() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let frames = diagonal_frame();
    let mut dims = [0usize; 6];
    for n in 0..100 {
        let f = frames.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        dims[f.dim()] += 1;
        let m = f.build();
        let curv = Curvature::compute(&m);
        let v = checks::all(&m, &curv);
        ensure(v.is_empty(), format!("frame {n} {f:?}: {:?}", v.first()))?;
    }
    let exprs = expr_strategy();
    for n in 0..1000 {
        let mut draw = || exprs.new_tree(&mut runner).map(|t| t.current()).map_err(|e| e.to_string());
        let (a, b, c) = (draw()?, draw()?, draw()?);
        let ok = &a + &b == &b + &a
            && &a * &b == &b * &a
            && &(&a + &b) + &c == &a + &(&b + &c)
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a + &Expr::zero() == a
            && &a * &Expr::one() == a
            && (&a - &a).is_zero()
            && a.normalize().normalize() == a.normalize()
            && Expr::from_terms(a.terms()) == a;
        ensure(ok, format!("triple {n}: {a} | {b} | {c}"))?;
    }
    Ok(format!("100 frames (dims 2..5: {:?}), 1000 triples", &dims[2..]))
}

const CHECKED: [&str; 9] = ["3.1", "3.2", "3.5", "4.1", "4.2i", "4.2ii", "4.2iii", "4.2iv", "4.2v"];

fn theorem_checks() -> Outcome {
    let m = cli::builtin("kenmotsu5").map_err(|e| e.to_string())?;
    let run = || cli::run(&Command::Theorems, &m, &Options::default()).map_err(|e| e.to_string());
    let (a, b) = (run()?, run()?);
    ensure(a.structured() == b.structured(), "theorem report not deterministic")?;
    let checks = a.section("theorems").and_then(|t| t["checks"].as_array()).ok_or("no theorem section")?;
    let find = |id: &str| checks.iter().find(|c| c["id"] == id);
    let mut mismatched = Vec::new();
    for id in CHECKED {
        let c = find(id).ok_or(format!("{id} missing"))?;
        let outcome = c["outcome"].as_str().unwrap_or_default();
        ensure(outcome == "MATCH" || outcome == "MISMATCH", format!("{id}: {outcome}"))?;
        let comps = c["comparisons"].as_array().ok_or(format!("{id}: no comparisons"))?;
        ensure(!comps.is_empty() && comps.iter().all(|x| x["discrepancy"].is_string()), format!("{id}: no discrepancy"))?;
        if outcome == "MISMATCH" {
            mismatched.push(id);
        }
    }
    let first = |id: &str| find(id).map(|c| c["comparisons"][0]["discrepancy"].clone()).unwrap_or(Value::Null);
    let pinned = [
        ("3.1", "4*theta"),
        ("3.2", "-20*theta"),
        ("4.2i", "2*theta"),
        ("4.2ii", "2*theta"),
        ("4.2iii", "-6 + 1/5*kappa*theta_rho - 1/5*theta_rho"),
        ("4.2iv", "-6 + 2*theta"),
        ("4.2v", "0"),
        ("3.5", "0"),
    ];
    for (id, want) in pinned {
        ensure(first(id) == want, format!("{id}: discrepancy {}", first(id)))?;
    }
    Ok(format!("mismatches flagged: {}", mismatched.join(", ")))
}

fn corrupted_phi() -> Result<String, String> {
    let mut v: Value = serde_json::from_str(&cli::builtin("kenmotsu5").map_err(|e| e.to_string())?.to_json())
        .map_err(|e| e.to_string())?;
    v["contact"]["phi"][2] = serde_json::json!(["1", "0", "0", "0", "0"]);
    serde_json::to_string_pretty(&v).map_err(|e| e.to_string())
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_kenmotsu");
    let out = Process::new(bin)
        .args(["--builtin", "kenmotsu5", "--command", "all", "--format", "structured"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), format!("exit {:?}", out.status.code()))?;
    let doc: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let mut sections = serde_json::Map::new();
    for s in ["curvature", "soliton"] {
        sections.insert(s.into(), doc.get(s).cloned().ok_or(format!("no {s} section"))?);
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(sections)).map_err(|e| e.to_string())?;
    text.push('\n');
    ensure(text == include_str!("golden/kenmotsu5.json"), "curvature/soliton sections differ from golden file")?;

    let dir = std::env::temp_dir().join(format!("kenmotsu-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join("corrupted.json");
    std::fs::write(&path, corrupted_phi()?).map_err(|e| e.to_string())?;
    let out = Process::new(bin)
        .args(["--command", "verify", "--format", "structured", "--manifest"])
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    let _ = std::fs::remove_dir_all(&dir);
    ensure(out.status.code() == Some(1), format!("corrupted phi exit {:?}", out.status.code()))?;
    let doc: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let s = &doc["structure"];
    let printed = s["axioms"]
        .as_array()
        .and_then(|a| a.iter().find(|x| x["id"] == "2.5"))
        .ok_or("no 2.5 residual section")?;
    ensure(printed["residual"].is_array(), "2.5 has no residual")?;
    let alt = &s["alternate_phi_derivative"];
    let nonzero = alt["residual"].as_array().map_or(0, Vec::len);
    let failed: Vec<String> = s["axioms"]
        .as_array()
        .map(|a| a.iter().filter(|x| x["holds"] == false).map(|x| x["id"].to_string()).collect())
        .unwrap_or_default();
    Ok(format!(
        "all exits 0, golden match; corrupted phi exits 1, failing {}, 2.5 holds = {}, 2.5-alt nonzero entries = {nonzero}",
        failed.join(" "),
        printed["holds"]
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("connection table", connection_table),
        ("curvature components", curvature_components),
        ("exact scalar values", scalar_values),
        ("identity suite", identity_suites),
        ("Lie derivative", lie_derivative),
        ("Omega solving", omega_solving),
        ("classification", classification),
        ("property suite", property_suite),
        ("theorem checks", theorem_checks),
        ("CLI contract", cli_contract),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {why}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
