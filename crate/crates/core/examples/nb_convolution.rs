use stochord::distributions::{
    convolve, deconvolve, nb_convolution, nb_deconvolution, nb_pmf, ConvolutionSpec, NegBinParams,
};

fn main() -> stochord::Result<()> {
    let cap = 1e-12;
    let s = ConvolutionSpec::negbin(&[0.7, 1.9, 0.4], &[0.3, 0.6, 0.85])?;
    let f = nb_convolution(&s, cap)?;
    println!(
        "support {} points, mass {:.15}, tail ≤ {:e}, mean {:.6} (exact {:.6})",
        f.len(),
        f.mass(),
        f.tail_bound,
        f.mean(),
        s.mean()
    );

    // shapes add at a common success probability
    let nb = |a, p| nb_pmf(NegBinParams::new(a, p).unwrap(), cap).unwrap();
    let sum = convolve(&nb(0.8, 0.4), &nb(1.7, 0.4))?;
    println!("NB(0.8) + NB(1.7) vs NB(2.5): {:e}", sum.linf_distance(&nb(2.5, 0.4))?);
    let q = deconvolve(&nb(2.5, 0.4), &nb(0.8, 0.4), 1e-12)?;
    println!("quotient {} (first terms {:?})", q.verdict.status_str(), &q.z[..4]);

    // convolution order through the generating-function quotient
    let lo = ConvolutionSpec::negbin(&[1.0, 1.0], &[0.6, 0.4])?;
    let hi = ConvolutionSpec::negbin(&[1.0, 1.0], &[0.8, 0.2])?;
    println!(
        "lo ≤conv hi: {}",
        nb_deconvolution(&hi, &lo, 1e-12, cap, false)?.verdict.status_str()
    );
    println!(
        "hi ≤conv lo: {}",
        nb_deconvolution(&lo, &hi, 1e-12, cap, false)?.verdict.status_str()
    );
    Ok(())
}
