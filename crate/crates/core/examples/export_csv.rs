use stochord::distributions::{
    default_gamma_grid, gamma_convolution_cdf, nb_convolution, write_grid_survival_csv, write_pmf_survival_csv,
    ConvolutionSpec,
};

fn main() -> stochord::Result<()> {
    let nb = ConvolutionSpec::negbin(&[1.0, 0.5], &[0.5, 0.3])?;
    let mut out = Vec::new();
    write_pmf_survival_csv(&mut out, &nb_convolution(&nb, 1e-12)?)?;
    print!(
        "{}",
        String::from_utf8_lossy(&out)
            .lines()
            .take(5)
            .collect::<Vec<_>>()
            .join("\n")
    );

    let g = ConvolutionSpec::gamma(&[0.7], &[1.3])?;
    let grid = default_gamma_grid(&g, &g, 16, 1e-12)?;
    let mut out = Vec::new();
    write_grid_survival_csv(&mut out, &gamma_convolution_cdf(&g, &grid, 1e-12)?)?;
    println!(
        "\n...\n{}",
        String::from_utf8_lossy(&out)
            .lines()
            .take(5)
            .collect::<Vec<_>>()
            .join("\n")
    );
    Ok(())
}
