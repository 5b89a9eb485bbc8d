//! Truncated Toeplitz matrices from symbols, and the rank-one operators
//! built from reproducing kernels together with explicit symbols.

use ttokit::tto::{build_tto, rank_one_tto, RankOneKind};
use ttokit::{BlaschkeProduct, CircleRational, ModelBasis, Quadrature, C64};

fn main() -> ttokit::Result<()> {
    // compressed shift on K_{z³}
    let shift = build_tto(&BlaschkeProduct::monomial(3), &CircleRational::z_pow(1))?;
    println!("A_z on K_(z³):\n{:.3}", shift.matrix.map(|c| c.re));

    let theta = BlaschkeProduct::new(vec![C64::new(0.3, 0.3), C64::new(-0.5, 0.0)], C64::new(1.0, 0.0))?;
    let basis = ModelBasis::new(&theta, Quadrature::default())?;
    for (kind, point) in [
        (RankOneKind::InteriorAnalytic, C64::new(0.2, 0.1)),
        (RankOneKind::InteriorCoanalytic, C64::new(0.0, 0.0)),
        (RankOneKind::Boundary, C64::from_polar(1.0, 1.1)),
    ] {
        let (tto, symbol) = rank_one_tto(&basis, kind, point)?;
        let sv: Vec<String> = ttokit::linalg::singular_values(&tto.matrix)
            .iter()
            .map(|s| format!("{s:.2e}"))
            .collect();
        println!(
            "{kind:?}: singular values [{}], symbol has {} term(s)",
            sv.join(", "),
            symbol.term_count()
        );
    }
    Ok(())
}
