// The worked example: parameter pairs (shapes, rates) of two gamma sums and
// the chain of coupled majorization moves between them.
use stochord::harness::worked_example;
use stochord::rc_order::{decide_wrc, verify_rc_chain, ChainMode, DecideOptions};
use stochord::PairClass;

fn main() -> stochord::Result<()> {
    let (s1, s2, chain) = worked_example();
    println!(
        "hand-built chain ({} moves) verifies: {}",
        chain.num_moves(),
        verify_rc_chain(&chain)
    );
    for (p, m) in chain.pairs.iter().skip(1).zip(&chain.moves) {
        println!("  {m:?} -> x = {:?}, y = {:?}", p.x().as_slice(), p.y().as_slice());
    }

    let p1 = PairClass::new(s1.shapes().clone(), s1.scales().clone())?;
    let p2 = PairClass::new(s2.shapes().clone(), s2.scales().clone())?;
    let found = decide_wrc(&p1, &p2, ChainMode::Strict, DecideOptions::default())?;
    if let Some(c) = found.evidence() {
        println!("search found {} moves:\n{}", c.num_moves(), c.to_json()?);
    }
    println!(
        "reverse direction: {}",
        decide_wrc(&p2, &p1, ChainMode::Weak, DecideOptions::default())?.status_str()
    );
    Ok(())
}
