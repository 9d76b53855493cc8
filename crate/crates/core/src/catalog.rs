//! Small named graphs and codes.

use crate::gfp::Prime;
use crate::graphcode::GraphCode;
use crate::matfp::FpMatrix;
use crate::symplectic::SymplecticCode;

/// Wheel with one input hub (vertex 0) joined to a cycle of `rim` output
/// vertices `1..=rim`, all weights one.
pub fn wheel_graph(p: Prime, rim: usize) -> GraphCode {
    assert!(rim >= 3, "a wheel needs a rim cycle of length at least 3");
    let mut adj = FpMatrix::zeros(p, rim + 1, rim + 1);
    let mut connect = |i: usize, j: usize| {
        adj.set(i, j, 1);
        adj.set(j, i, 1);
    };
    for r in 1..=rim {
        connect(0, r);
        connect(r, r % rim + 1);
    }
    GraphCode::new(p, 1, rim, adj).expect("square adjacency")
}

/// Two output vertices joined by an edge of weight one.
pub fn single_edge_graph(p: Prime) -> GraphCode {
    GraphCode::from_rows(p, 0, 2, &[[0, 1], [1, 0]]).expect("square adjacency")
}

/// CSS code with X-checks `hx` and Z-checks `hz` (block-diagonal generator).
pub fn css_code(hx: &FpMatrix, hz: &FpMatrix) -> crate::error::Result<SymplecticCode> {
    let n = hx.cols();
    let p = hx.modulus();
    let top = hx.hstack(&FpMatrix::zeros(p, hx.rows(), n))?;
    let bottom = FpMatrix::zeros(p, hz.rows(), n).hstack(hz)?;
    SymplecticCode::new(n, &top.vstack(&bottom)?)
}

/// Parity checks of the binary `[7,4,3]` Hamming code.
pub fn hamming_parity_check() -> FpMatrix {
    let p = Prime::new(2).expect("prime");
    FpMatrix::from_rows(
        p,
        &[
            [1, 0, 0, 1, 0, 1, 1],
            [0, 1, 0, 1, 1, 1, 0],
            [0, 0, 1, 0, 1, 1, 1],
        ],
    )
    .expect("rectangular rows")
}

/// The `[[7,1,3]]` Steane code.
pub fn steane_code() -> SymplecticCode {
    let h = hamming_parity_check();
    css_code(&h, &h).expect("matching shapes")
}
