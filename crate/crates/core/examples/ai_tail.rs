// Tail of Σ λ_i G_{α_i,1} grows as shapes and weights become more similarly
// arranged.
use stochord::harness::check_ai_tail;
use stochord::PairClass;

fn main() -> stochord::Result<()> {
    let shapes = [0.5, 1.2, 2.5];
    let chain = [[3.0, 1.0, 0.4], [1.0, 3.0, 0.4], [0.4, 3.0, 1.0], [0.4, 1.0, 3.0]];
    let c = 5.0;
    for w in chain.windows(2) {
        let a = PairClass::from_slices(&shapes, &w[0])?;
        let b = PairClass::from_slices(&shapes, &w[1])?;
        let r = check_ai_tail(&a, &b, c, 1e-12, 1e-12)?;
        println!("{:?} -> {:?}: {:.6} ≤ {:.6} {}", w[0], w[1], r.tail1, r.tail2, r.holds);
    }
    Ok(())
}
