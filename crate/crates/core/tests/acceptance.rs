//! Acceptance criteria 1–10 at full scale, one line per check.

use std::process::ExitCode;
use std::time::Instant;

use davenport::arith::FnId;
use davenport::suite::{self, Check, Context, Scale, SelfTest};
use davenport::tolerances::POPOV_RUNTIME_SECS;
use davenport::zeta::ZeroTable;
use davenport::Workspace;

fn line(c: &Check) -> String {
    let status = if c.pass { "PASS" } else { "FAIL" };
    format!("[{status}] C{} {}: value={:.3e} threshold={:.3e}", c.criterion, c.name, c.value, c.threshold)
}

fn run_in_pool(threads: usize, ctx: &Context) -> SelfTest {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(|| suite::run(ctx))
        .expect("selftest runs")
}

fn main() -> ExitCode {
    let mut checks = Vec::new();

    // criterion 1 runtime: sieve Λ and evaluate the three explicit-formula reports from scratch
    let started = Instant::now();
    let cold = Workspace::new(Scale::Full.n_max()).expect("workspace").with_zeros(ZeroTable::bundled());
    cold.pair(FnId::VonMangoldt).expect("sieve");
    let extra = ZeroTable::bundled_200();
    let ctx = Context { ws: &cold, zeros_extra: None, scale: Scale::Full };
    suite::criterion1(&ctx).expect("criterion 1");
    let secs = started.elapsed().as_secs_f64();
    drop(cold);

    let ws = Context::workspace(Scale::Full).expect("workspace");
    let ctx = Context { ws: &ws, zeros_extra: Some(&extra), scale: Scale::Full };
    let first = suite::run(&ctx).expect("selftest runs");
    checks.extend(first.checks().cloned());
    checks.insert(0, Check::at_most(1, "popov runtime seconds", secs, POPOV_RUNTIME_SECS));

    let json = |s: &SelfTest| serde_json::to_string(s).expect("serializable");
    let reference = json(&first);
    let again = json(&suite::run(&ctx).expect("selftest runs"));
    checks.push(Check::holds(10, "two consecutive runs bitwise identical", again == reference));
    for threads in [1, 4] {
        let other = json(&run_in_pool(threads, &ctx));
        checks.push(Check::holds(10, format!("{threads}-thread run bitwise identical"), other == reference));
    }

    for c in &checks {
        println!("{}", line(c));
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    println!("acceptance: {} checks, {} failed", checks.len(), failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
