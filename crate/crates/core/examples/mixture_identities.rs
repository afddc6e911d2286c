use stochord::distributions::ConvolutionSpec;
use stochord::harness::{
    gamma_mix_more_residual, gamma_pair_residual, gamma_single_residual, nb_mix_more_residual, nb_mixture_residual,
    nb_pair_residual,
};

fn main() -> stochord::Result<()> {
    let cap = 1e-12;
    let nb = ConvolutionSpec::negbin(&[0.7, 1.9], &[0.3, 0.6])?;
    let g = ConvolutionSpec::gamma(&[0.5, 2.0], &[1.0, 3.0])?;
    let rows = [
        nb_mixture_residual(1.0, 0.5, 0.4, cap)?,
        nb_mix_more_residual(&nb, 0.8, cap)?,
        nb_pair_residual(1.2, 0.6, 0.1, 0.3, cap)?,
        gamma_single_residual(1.4, 0.3, 2.0, cap)?,
        gamma_mix_more_residual(&g, 6.0, 12.0, cap)?,
        gamma_pair_residual(0.8, 0.5, 0.1, 0.35, cap)?,
    ];
    for r in rows {
        println!(
            "{:<15} residual {:.2e}  (truncation ≤ {:.1e}, {} points)",
            r.identity, r.residual, r.tail_bound, r.points
        );
    }
    Ok(())
}
