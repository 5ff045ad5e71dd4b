//! Scalar-type maps from a torus: the lattice condition and whether the map
//! is constant or factors through an elliptic curve.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use jalpha::curves::{complex_element, lattice_condition, scalar_factorization, PeriodData, StabilizerGroup};
use jalpha::lie::LieAlgebra;

fn main() -> jalpha::Result<()> {
    let su2 = LieAlgebra::su2();
    // Z acts as diag(2πi, -2πi) in the defining representation
    let z = complex_element(&[0.0, 0.0, -2.0 * SQRT_2 * PI], &[0.0; 3]);
    println!("Z = {}", su2.matrix_of_complex(&z)?);
    let tau = Complex64::new(0.0, 1.0);
    let periods = PeriodData::torus(Complex64::new(1.0, 0.0), tau);

    // Γ = {1}: exp(Z) = 1 but exp(Z i) = diag(e^{-2π}, e^{2π})
    let trivial = StabilizerGroup::trivial(2);
    println!("trivial Γ: {:?}", lattice_condition(&su2, &z, &periods, &trivial)?);
    println!("exp(Z·i) = {}", su2.exp_matrix(&z.scale(tau))?.matrix());
    println!("           {:?}", scalar_factorization(&su2, &z, &periods, &trivial)?);

    // Γ generated by the period images
    let gens = periods.periods.iter().map(|w| su2.exp_matrix(&z.scale(*w))).collect::<jalpha::Result<Vec<_>>>()?;
    let gamma = StabilizerGroup::new(&su2, gens, 3, 1e-9)?;
    println!("constructed Γ: {:?}", lattice_condition(&su2, &z, &periods, &gamma)?);
    println!("               {:?}", scalar_factorization(&su2, &z, &periods, &gamma)?);

    // periods generating a dense subgroup of a line, and no periods at all
    let t1 = LieAlgebra::torus(1);
    let w = complex_element(&[2.0 * PI], &[0.0]);
    let dense = PeriodData::new(vec![Complex64::new(1.0, 0.0), Complex64::new(SQRT_2, 0.0)]);
    let g = StabilizerGroup::new(&t1, vec![t1.exp_matrix(&w.scale(Complex64::new(SQRT_2, 0.0)))?], 2, 1e-9)?;
    println!("periods (1, √2): {:?}", scalar_factorization(&t1, &w, &dense, &g)?);
    println!("no periods:      {:?}", scalar_factorization(&su2, &z, &PeriodData::new(vec![]), &trivial)?);
    Ok(())
}
