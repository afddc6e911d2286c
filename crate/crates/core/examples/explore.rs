// Weak order on (shapes, log rates) does not by itself give a certificate
// for the convolution order; the search keeps configurations where the
// latent quotient goes negative.
use stochord::harness::{explore_counterexamples, VerifyOptions};

fn main() -> stochord::Result<()> {
    let found = explore_counterexamples(500, 1, &VerifyOptions::default())?;
    println!("{} candidates out of 500 draws", found.len());
    for c in found.iter().take(3) {
        println!(
            "shapes {:?} rates {:?} vs shapes {:?} rates {:?}: z[{}] = {:.3e} (bound {:.1e})",
            c.spec1.shapes().as_slice(),
            c.spec1.scales().as_slice(),
            c.spec2.shapes().as_slice(),
            c.spec2.scales().as_slice(),
            c.index,
            c.coefficient,
            c.error_bound
        );
    }
    Ok(())
}
