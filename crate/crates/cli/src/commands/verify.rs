use gencluster::verify::{verify_eta, verify_phi, VerifyReport};

use crate::args::{VerifyArgs, VerifyCommon, VerifyTarget};
use crate::output::{bad_input, CmdResult, Failure, Output};

pub fn run(out: &Output, a: VerifyArgs) -> CmdResult {
    let (report, common) = match a.target {
        VerifyTarget::Phi { l, common } => {
            if l < 2 {
                return Err(Failure::usage("verify phi needs --l at least 2"));
            }
            (
                bad_input(verify_phi(l, common.bound, common.rng_seed), "verify phi")?,
                common,
            )
        }
        VerifyTarget::Eta { common } => (verify_eta(common.bound, common.rng_seed)?, common),
    };
    print_report(out, &report, &common);
    if let Some(path) = &common.json {
        out.write_json(path, &report)?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::failed(format!(
            "{} check(s) failed",
            report.failures().count()
        )))
    }
}

fn print_report(out: &Output, r: &VerifyReport, c: &VerifyCommon) {
    out.line(format!(
        "{} (l = {}, degree bound {}, rng seed {:#x})",
        r.target, r.level, c.bound, r.rng_seed
    ));
    for (category, s) in &r.summary {
        let mark = if s.passed == s.total { "ok" } else { "FAIL" };
        out.line(format!(
            "  {category:<24} {:>5}/{:<5} {mark}",
            s.passed, s.total
        ));
    }
    for f in r.failures() {
        let detail = f.detail.as_deref().unwrap_or("");
        out.line(format!("  failed {}: {} {detail}", f.category, f.name));
    }
    out.line(if r.passed { "PASSED" } else { "FAILED" });
}
