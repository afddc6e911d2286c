// Arrangement order: the second pair is reached from the first by swaps that
// make the two coordinates more similarly ordered.
use stochord::arrangement::{check_arrangement_leq, verify_arrangement_chain};
use stochord::PairClass;

fn main() -> stochord::Result<()> {
    let opposite = PairClass::from_slices(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0])?;
    let similar = PairClass::from_slices(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0])?;

    let v = check_arrangement_leq(&opposite, &similar, 40_320)?;
    println!("opposite ≤a similar: {}", v.status_str());
    if let Some(swaps) = v.evidence() {
        println!(
            "  {} swaps, chain verifies: {}",
            swaps.len(),
            verify_arrangement_chain(&opposite, &similar, swaps)
        );
    }
    println!(
        "similar ≤a opposite: {}",
        check_arrangement_leq(&similar, &opposite, 40_320)?.status_str()
    );
    Ok(())
}
