//! The trace-word unitary equivalence test on matrices that share a spectrum.

use ttokit::directsum::sufficient_word_len;
use ttokit::{unitary_equiv_check, CMatrix, C64};

fn main() {
    let c = |re: f64| C64::new(re, 0.0);
    let jordan = CMatrix::from_row_slice(
        3,
        3,
        &[c(0.0), c(1.0), c(0.0), c(0.0), c(0.0), c(1.0), c(0.0), c(0.0), c(0.0)],
    );
    let split = CMatrix::from_row_slice(
        3,
        3,
        &[c(0.0), c(1.0), c(0.0), c(0.0), c(0.0), c(0.0), c(0.0), c(0.0), c(0.0)],
    );
    let rotated = {
        let u = ttokit::linalg::complete_frame(&[ttokit::CVector::from_vec(vec![c(1.0), c(1.0), c(0.0)])], 3);
        &u * &jordan * u.adjoint()
    };
    let len = sufficient_word_len(3);
    println!(
        "jordan vs rotated jordan: {:?}",
        unitary_equiv_check(&jordan, &rotated, len)
    );
    println!(
        "jordan vs smaller jordan: {:?}",
        unitary_equiv_check(&jordan, &split, len)
    );
    println!("short words only: {:?}", unitary_equiv_check(&jordan, &rotated, 1));
}
