//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use morita::context::ContextRing;
use morita::finalg::{inner_automorphism, ring_isos_bruteforce, ring_isos_naive, FinRing, SearchOptions};
use morita::fixtures::{self, Fixture};
use morita::isoclasses::{compose, enumerate_iso0, invert, membership_test, realize, Membership, RingMap};
use morita::theorems::{self, Status, Verdict};

type Check = Result<String, String>;

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn all_hold(verdicts: &[Verdict], min_applicable: usize) -> Check {
    let applicable: Vec<_> = verdicts.iter().filter(|v| v.status != Status::NotApplicable).collect();
    if let Some(bad) = applicable.iter().find(|v| !v.holds()) {
        return Err(format!("{} on {} is false: {:?}", bad.claim, bad.subject, bad.details));
    }
    if applicable.len() < min_applicable {
        return Err(format!("only {} applicable cases", applicable.len()));
    }
    Ok(format!("{} applicable cases hold", applicable.len()))
}

fn ring_soundness(all: &[Fixture]) -> Check {
    let mut slowest = Duration::ZERO;
    for f in all {
        let start = Instant::now();
        let rebuilt = ContextRing::build(f.ring.context().clone()).map_err(|e| e.to_string())?;
        let report = rebuilt.ring().validate();
        let elapsed = start.elapsed();
        if !report.passed() {
            return Err(format!("{}: {report}", f.name));
        }
        if f.ring.order() <= 256 && elapsed > Duration::from_secs(5) {
            return Err(format!("{} took {elapsed:?}", f.name));
        }
        slowest = slowest.max(elapsed);
    }
    Ok(format!("{} fixtures, slowest {} ms", all.len(), slowest.as_millis()))
}

fn zero_maps_counts(all: &[Fixture]) -> Check {
    let get = |n: &str| all.iter().find(|f| f.name == n).unwrap().ring.clone();
    let cases = [
        ("u2-f2", "u2-f2", 2),
        ("zero-f2", "zero-f2", 8),
        ("z4-quotient", "z4-quotient", 2),
        ("u2-f2", "u2-f2-t", 2),
    ];
    let mut seen = Vec::new();
    for (a, b, expected) in cases {
        let v = theorems::verify_zero_maps_theorem(&get(a), &get(b), opts()).map_err(|e| e.to_string())?;
        if !v.holds() || v.details["iso"] != expected || v.details["iso0"] != expected {
            return Err(format!("{a} -> {b}: {:?} {:?}", v.status, v.details));
        }
        seen.push(expected.to_string());
    }
    Ok(format!("|Iso| = |Iso_0| = {}", seen.join(", ")))
}

fn semigraded(all: &[Fixture]) -> Check {
    all_hold(&theorems::verify_on_fixtures("semigraded", all, opts()).map_err(|e| e.to_string())?, 4)
}

fn functoriality(all: &[Fixture]) -> Check {
    let mut pairs = 0;
    let mut inverses = 0;
    let mut odd = false;
    let small: Vec<_> = all.iter().filter(|f| f.ring.order() <= 81).collect();
    let mut chains: Vec<(Arc<ContextRing>, Arc<ContextRing>, Arc<ContextRing>)> =
        small.iter().map(|f| (f.ring.clone(), f.ring.clone(), f.ring.clone())).collect();
    let get = |n: &str| all.iter().find(|f| f.name == n).unwrap().ring.clone();
    chains.push((get("u2-f2"), get("u2-f2-t"), get("u2-f2")));
    chains.push((get("u2-f2-t"), get("u2-f2"), get("u2-f2-t")));
    for (a, b, c) in chains {
        let (x0, x1) = enumerate_iso0(&a, &b, opts()).map_err(|e| e.to_string())?;
        let (y0, y1) = enumerate_iso0(&b, &c, opts()).map_err(|e| e.to_string())?;
        let xs: Vec<_> = x0.into_iter().chain(x1).collect();
        let ys: Vec<_> = y0.into_iter().chain(y1).collect();
        let realized_y: Vec<RingMap> = ys.iter().map(|t| realize(t).unwrap()).collect();
        for t1 in &xs {
            let r1 = realize(t1).map_err(|e| e.to_string())?;
            let inv = invert(t1).map_err(|e| e.to_string())?;
            if realize(&inv).map_err(|e| e.to_string())? != r1.inverse().map_err(|e| e.to_string())? {
                return Err(format!("inverse mismatch on {}", a.label()));
            }
            inverses += 1;
            for (t2, r2) in ys.iter().zip(&realized_y) {
                let lhs = realize(&compose(t1, t2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                if lhs != r1.then(r2).map_err(|e| e.to_string())? {
                    return Err(format!("composition mismatch on {}", a.label()));
                }
                pairs += 1;
                odd |= a.context().r().order() % 2 == 1;
            }
        }
    }
    if pairs < 100 || !odd {
        return Err(format!("{pairs} pairs, odd characteristic covered: {odd}"));
    }
    Ok(format!("{pairs} composable pairs, {inverses} inverses, odd characteristic included"))
}

fn obstruction() -> Check {
    let t = fixtures::matrix(&fixtures::field(2), "M2(F2)");
    let aut = ring_isos_bruteforce(t.ring(), t.ring(), opts()).map_err(|e| e.to_string())?;
    let (c0, c1) = enumerate_iso0(&t, &t, opts()).map_err(|e| e.to_string())?;
    let unit = t.join(1, 1, 0, 1);
    let eta = inner_automorphism(t.ring(), unit).map_err(|e| e.to_string())?;
    let eta = RingMap::from_iso(t.clone(), t.clone(), &eta).map_err(|e| e.to_string())?;
    let verdict = membership_test(&eta).map_err(|e| e.to_string())?;
    let aut0 = c0.len() + c1.len();
    if aut.len() != 6 || aut0 != 2 || verdict != Membership::Neither {
        return Err(format!("|Aut| = {}, |Aut_0| = {aut0}, eta: {}", aut.len(), verdict.label()));
    }
    Ok("|Aut| = 6, |Aut_0| = 2, inner automorphism by [[1,1],[0,1]] is neither".into())
}

fn central_idempotents(all: &[Fixture]) -> Check {
    let lemma: Vec<_> = all.iter().map(|f| theorems::verify_central_idempotent_lemma(&f.ring)).collect();
    all_hold(&lemma, all.len())?;
    let corners: Vec<_> = all.iter().map(|f| theorems::verify_indecomposable_corners(&f.ring)).collect();
    let applicable = corners.iter().filter(|v| v.status != Status::NotApplicable).count();
    all_hold(&corners, 3)?;
    let f2 = fixtures::field(2);
    let example = theorems::verify_indecomposable_triangular(&fixtures::product(&f2, &f2), 2);
    if !example.holds() {
        return Err(format!("decomposable corner: {:?}", example.details));
    }
    Ok(format!("{} fixtures agree with the oracle, {applicable} indecomposable-corner cases hold", all.len()))
}

fn strict_graded(all: &[Fixture]) -> Check {
    all_hold(&theorems::verify_on_fixtures("strict-graded", all, opts()).map_err(|e| e.to_string())?, 2)
}

fn peirce(all: &[Fixture]) -> Check {
    let verdicts: Vec<_> = all
        .iter()
        .map(|f| theorems::verify_peirce_round_trip(&f.ring))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    all_hold(&verdicts, all.len())
}

fn oracle_self_check(all: &[Fixture]) -> Check {
    let mut rings: Vec<Arc<FinRing>> = Vec::new();
    for f in all {
        let c = f.ring.context();
        rings.extend([c.r().clone(), c.s().clone(), f.ring.ring().clone()]);
    }
    rings.retain(|r| r.order() <= 16);
    rings.dedup_by(|a, b| a == b);
    let mut checked = 0;
    for a in &rings {
        for b in &rings {
            if a.order() != b.order() {
                continue;
            }
            let fast = ring_isos_bruteforce(a, b, opts()).map_err(|e| e.to_string())?;
            let slow = ring_isos_naive(a, b);
            if fast != slow {
                return Err(format!("{} -> {}: {} vs {}", a.label(), b.label(), fast.len(), slow.len()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} ring pairs of order <= 16 agree"))
}

fn determinism() -> Check {
    let config = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/fixtures.toml");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_morita"))
            .args(["--config", config, "--format", "structured", "verify", "all"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if !a.status.success() {
        return Err(format!("exit {:?}: {}", a.status.code(), String::from_utf8_lossy(&a.stderr)));
    }
    if a.stdout != b.stdout || a.stdout.is_empty() {
        return Err("reports differ".into());
    }
    Ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn main() {
    let all = fixtures::standard();
    let criteria: Vec<Criterion> = vec![
        ("ring soundness", Box::new(|| ring_soundness(&all))),
        ("zero-maps equality", Box::new(|| zero_maps_counts(&all))),
        ("semigraded classification", Box::new(|| semigraded(&all))),
        ("composition and inverse tables", Box::new(|| functoriality(&all))),
        ("nonzero-maps obstruction", Box::new(obstruction)),
        ("central idempotents", Box::new(|| central_idempotents(&all))),
        ("strict contexts are graded", Box::new(|| strict_graded(&all))),
        ("Peirce round trip", Box::new(|| peirce(&all))),
        ("oracle self-check", Box::new(|| oracle_self_check(&all))),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(msg) => println!("PASS {:>2} {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
