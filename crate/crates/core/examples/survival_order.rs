use stochord::distributions::{
    default_gamma_grid, gamma_convolution_cdf, lr_monotone_check, nb_pmf, survival_dominance_check, ConvolutionSpec,
    LawRef, NegBinParams,
};

fn main() -> stochord::Result<()> {
    let f1 = nb_pmf(NegBinParams::new(2.0, 0.6)?, 1e-12)?;
    let f2 = nb_pmf(NegBinParams::new(2.0, 0.4)?, 1e-12)?;
    println!(
        "NB(2, 0.6) ≤st NB(2, 0.4): {}",
        survival_dominance_check(LawRef::from(&f1), LawRef::from(&f2), 1e-12)?.status_str()
    );
    println!(
        "reverse: {}",
        survival_dominance_check(LawRef::from(&f2), LawRef::from(&f1), 1e-12)?.status_str()
    );
    println!("likelihood ratio monotone: {}", lr_monotone_check(&f1, &f2));

    let g1 = ConvolutionSpec::gamma(&[1.0, 2.0], &[2.0, 1.0])?;
    let g2 = ConvolutionSpec::gamma(&[1.0, 2.0], &[1.5, 0.8])?;
    let grid = default_gamma_grid(&g1, &g2, 128, 1e-12)?;
    let (c1, c2) = (
        gamma_convolution_cdf(&g1, &grid, 1e-12)?,
        gamma_convolution_cdf(&g2, &grid, 1e-12)?,
    );
    let v = survival_dominance_check(LawRef::from(&c1), LawRef::from(&c2), 1e-12)?;
    println!("gamma sums on {} grid points: {v:?}", grid.len());
    Ok(())
}
