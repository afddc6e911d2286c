use stochord::majorization::{check_majorization, t_transform_chain, MajorizationMode, RealVector};

fn main() -> stochord::Result<()> {
    let x = RealVector::new(vec![2.0, 2.0, 2.0])?;
    let y = RealVector::new(vec![0.0, 1.0, 5.0])?;
    for mode in [MajorizationMode::Full, MajorizationMode::Below, MajorizationMode::Above] {
        println!("{mode:?}: x ? y -> {:?}", check_majorization(&x, &y, mode)?);
    }

    let chain = t_transform_chain(&x, &y)?;
    println!("{} T-steps from sorted x to sorted y", chain.steps.len());
    for (v, s) in chain.vectors.iter().skip(1).zip(&chain.steps) {
        println!("  move {:.3} from {} to {}: {:?}", s.eps, s.i, s.j, v.as_slice());
    }
    Ok(())
}
