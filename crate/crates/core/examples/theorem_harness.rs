// Every scenario: generate a few instances, check the parameter order, then
// certify the implied stochastic order numerically.
use stochord::harness::{run_scenario, Agreement, ScenarioKind, VerifyOptions};

fn main() -> stochord::Result<()> {
    let opts = VerifyOptions::default();
    for kind in ScenarioKind::ALL {
        let reports = run_scenario(kind, 3, 0..10, &opts);
        let mut agree = 0;
        for r in &reports {
            if r.as_ref().is_ok_and(|r| r.agreement == Agreement::Agree) {
                agree += 1;
            }
        }
        let ms: f64 = reports.iter().flatten().map(|r| r.runtime_ms).sum();
        println!("{:<26} {agree}/{} agree  ({ms:.0} ms)", kind.name(), reports.len());
    }

    let first = run_scenario(ScenarioKind::MajorizeAlpha, 2, 0..1, &opts).remove(0)?;
    println!("\n{}", first.to_json_line()?);
    Ok(())
}
