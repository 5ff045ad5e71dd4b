//! Built-in Lie algebras, their groups, and the exponential and polar maps.

use jalpha::lie::{AlgebraElement, ComplexAlgebraElement, LieAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> jalpha::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for alg in [LieAlgebra::su2(), LieAlgebra::so3(), LieAlgebra::torus(2)] {
        println!(
            "{:>4}: dim {}, antisymmetry {:.1e}, Jacobi {:.1e}, ad-invariance {:.1e}",
            alg.name(),
            alg.dim(),
            alg.antisymmetry_residual(),
            alg.jacobi_residual(),
            alg.invariance_residual()
        );
    }

    let su2 = LieAlgebra::su2();
    let (x, y) = (su2.basis_element(0), su2.basis_element(1));
    println!("[X1, X2] = {:?}", su2.bracket(&x, &y)?.coeffs().as_slice());

    // g = k exp(iX) and back
    let k = su2.exp_real(&AlgebraElement::random(3, &mut rng, 1.0))?;
    let xi = AlgebraElement::random(3, &mut rng, 0.8);
    let g = &k * &su2.exp_matrix(&ComplexAlgebraElement::imaginary(xi.clone()))?;
    su2.check_complex(&g)?;
    let (k2, x2) = su2.kp_decompose(&g)?;
    println!("polar decomposition: |k - k'| = {:.2e}, |X - X'| = {:.2e}", k.distance(&k2), (&xi - &x2).coeff_norm());

    // the adjoint action is an isometry
    let z = AlgebraElement::random(3, &mut rng, 1.0);
    let moved = su2.ad_action(&k, &z)?;
    println!("|Ad_k Z| - |Z| = {:.2e}", su2.norm(&moved) - su2.norm(&z));

    // user-supplied structure constants round-trip through JSON
    let text = serde_json::to_string(&LieAlgebra::so3().to_spec())?;
    let custom = LieAlgebra::from_json(&text)?;
    println!("custom algebra: dim {}, group kind {:?}", custom.dim(), custom.group_kind()?);
    Ok(())
}
