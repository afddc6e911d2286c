// Target pair oppositely ordered: the weak order follows from the two
// one-sided majorizations alone, and a chain can be built directly.
use stochord::rc_order::{check_necessary, construct_chain_opposite, verify_rc_chain, ChainMode};
use stochord::PairClass;

fn main() -> stochord::Result<()> {
    let p1 = PairClass::from_slices(&[0.0, 0.0, 0.5], &[0.6, 0.9, 0.7])?;
    let p2 = PairClass::from_slices(&[0.4, 1.0, 1.6], &[0.9, 0.5, 0.2])?;
    println!(
        "necessary conditions: {:?}",
        check_necessary(&p1, &p2, ChainMode::Weak)?.holds
    );
    let chain = construct_chain_opposite(&p1, &p2, ChainMode::Weak)?;
    println!("{} moves, verifies: {}", chain.num_moves(), verify_rc_chain(&chain));
    for m in &chain.moves {
        println!("  {m:?}");
    }
    Ok(())
}
