//! One line per acceptance criterion; all comparisons are exact. Runs
//! without the libtest harness so the lines are never captured.

use std::process::ExitCode;
use std::time::Instant;

use gpdcalc::battery;
use gpdcalc::fpgroup::RewriteBound;
use gpdcalc::par::Exec;

const TITLES: [&str; 12] = [
    "circle pushout is infinite cyclic",
    "universal morphism unit is injective",
    "adjunction hom-set bijections",
    "fibre inclusion preserves connected colimits",
    "induced module equals tensor oracle",
    "free module via induction",
    "cocartesian lift as pushout",
    "induced crossed module batteries",
    "free crossed module abelianization",
    "retraction normal form",
    "crossed square D-completion",
    "wedge scenario presentation",
];

fn main() -> ExitCode {
    let exec = Exec::default();
    let b = RewriteBound::default();
    let runs: Vec<Box<dyn Fn() -> gpdcalc::Result<battery::Outcome>>> = vec![
        Box::new(|| battery::circle(&b)),
        Box::new(|| battery::unit_injectivity(exec, 200, 2)),
        Box::new(|| battery::adjunctions(exec)),
        Box::new(|| battery::fibre_inclusion(exec, 100, 4, &b)),
        Box::new(|| battery::induced_module_oracle(exec)),
        Box::new(|| battery::free_modules(exec)),
        Box::new(|| battery::pushouts(exec, &b)),
        Box::new(|| battery::induced_xmods(exec, &b)),
        Box::new(battery::free_xmod_abelianization),
        Box::new(|| battery::reconstruction(exec)),
        Box::new(|| battery::d_completions(exec, &b)),
        Box::new(battery::wedge),
    ];
    let mut failed = Vec::new();
    for (i, run) in runs.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = match run() {
            Ok(o) => (o.passed, format!("{} cases; {}", o.cases, o.detail)),
            Err(e) => (false, format!("error: {e}")),
        };
        println!("criterion {:>2} {} {}: {detail} ({:.2?})", i + 1, if ok { "PASS" } else { "FAIL" }, TITLES[i], t.elapsed());
        if !ok {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
