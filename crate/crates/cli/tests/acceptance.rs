//! One line per acceptance criterion, each with its time bound.

use std::process::Command;
use std::time::{Duration, Instant};

use ctlab::suite::{Report, Runner};

struct Outcome {
    id: usize,
    title: &'static str,
    ok: bool,
    detail: String,
}

fn timed(id: usize, title: &'static str, bound: Duration, seed: u64, f: impl FnOnce(&mut Runner)) -> Outcome {
    let mut r = Runner::new("acceptance", seed, false);
    let t = Instant::now();
    f(&mut r);
    let rep: Report = r.finish();
    let elapsed = t.elapsed();
    let failed: Vec<&str> = rep.checks.iter().filter(|c| c.status == ctlab::suite::Status::Fail).map(|c| c.name.as_str()).collect();
    let ok = failed.is_empty() && elapsed < bound;
    let detail = format!(
        "{} checks, {} failed{} in {:.2}s (bound {}s)",
        rep.checks.len(),
        failed.len(),
        if failed.is_empty() { String::new() } else { format!(" {failed:?}") },
        elapsed.as_secs_f64(),
        bound.as_secs()
    );
    Outcome { id, title, ok, detail }
}

fn determinism() -> Outcome {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_ctlab"))
            .args(["all", "--q", "5", "--n", "4", "--seed", "0"])
            .output()
            .expect("ctlab runs");
        (out.status.code(), out.stdout)
    };
    let (c1, a) = run();
    let (c2, b) = run();
    let ok = a == b && c1 == Some(0) && c2 == Some(0) && a.starts_with(b"{");
    Outcome { id: 8, title: "determinism", ok, detail: format!("{} bytes, exit codes {c1:?}/{c2:?}", a.len()) }
}

#[test]
fn acceptance() {
    let s = |x| Duration::from_secs(x);
    let outcomes = vec![
        timed(1, "ltau relations", s(10), 0, |r| r.amalgam_tau(5, 4, 3)),
        timed(2, "ldelta and mixed relations", s(30), 0, |r| {
            r.amalgam_delta(4, 4, 1, 3);
            r.amalgam_mixed(4, 4, 1, 3, 50);
        }),
        timed(3, "det_R suite", s(20), 0, |r| r.detr(4, 2, 4, 100)),
        timed(4, "form suite", s(20), 0, |r| r.form(5, 4, 100)),
        timed(5, "specialization suite", s(60), 0, |r| {
            for at in ["-1", "1", "zeta"] {
                r.specialize(5, 4, at);
            }
            r.cyclic(4, 50);
        }),
        timed(6, "coxeter suite", s(60), 0, |r| r.coxeter(8, 4, 8, 200)),
        timed(7, "geometry suite", s(120), 0, |r| {
            for case in ["1", "2", "rank2"] {
                r.geometry(5, case, 1000);
            }
        }),
        determinism(),
    ];
    for o in &outcomes {
        println!("criterion {}: {} {} ({})", o.id, if o.ok { "PASS" } else { "FAIL" }, o.title, o.detail);
    }
    assert!(outcomes.iter().all(|o| o.ok));
}
