//! The wheel `W_7` and Steane `[[7,1,3]]` examples, checked against matrices
//! written out by hand.

use graphstab_core::catalog::{steane_code, wheel_graph};
use graphstab_core::enumerator::gf4_rank;
use graphstab_core::*;

const WHEEL_ADJ: [[i64; 8]; 8] = [
    [0, 1, 1, 1, 1, 1, 1, 1],
    [1, 0, 1, 0, 0, 0, 0, 1],
    [1, 1, 0, 1, 0, 0, 0, 0],
    [1, 0, 1, 0, 1, 0, 0, 0],
    [1, 0, 0, 1, 0, 1, 0, 0],
    [1, 0, 0, 0, 1, 0, 1, 0],
    [1, 0, 0, 0, 0, 1, 0, 1],
    [1, 1, 0, 0, 0, 0, 1, 0],
];

/// `D·(I | M_y)` for the even-weight `D`.
const WHEEL_G: [[i64; 14]; 6] = [
    [1, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1],
    [0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 1, 1, 0, 1, 0, 1, 1, 0],
    [0, 0, 0, 0, 1, 0, 1, 1, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1, 1],
];

/// GF(4) generator with 0, 1, `a`, `a^2` written as 0, 1, 2, 3.
const WHEEL_G4: [[u8; 7]; 6] = [
    [3, 2, 0, 0, 0, 2, 3],
    [0, 1, 2, 0, 0, 2, 1],
    [2, 2, 1, 2, 0, 2, 1],
    [2, 0, 2, 1, 2, 2, 1],
    [2, 0, 0, 2, 1, 0, 1],
    [2, 0, 0, 0, 2, 3, 3],
];

const HAMMING_ADJ: [[i64; 8]; 8] = [
    [0, 0, 1, 0, 0, 0, 1, 1],
    [0, 0, 0, 1, 1, 1, 0, 0],
    [1, 0, 0, 1, 0, 1, 0, 0],
    [0, 1, 1, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, 0, 1, 1],
    [0, 1, 1, 0, 0, 0, 0, 1],
    [1, 0, 0, 1, 1, 0, 0, 0],
    [1, 0, 0, 0, 1, 1, 0, 0],
];

const STEANE_G: [[i64; 14]; 6] = [
    [1, 0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 1],
];

fn two() -> Prime {
    Prime::new(2).unwrap()
}

fn gf4(v: u8) -> Gf4 {
    [Gf4::ZERO, Gf4::ONE, Gf4::ALPHA, Gf4::ALPHA_SQ][v as usize]
}

#[test]
fn wheel_adjacency_literal_matches_catalog() {
    let literal = GraphCode::from_rows(two(), 1, 7, &WHEEL_ADJ).unwrap();
    assert_eq!(literal, wheel_graph(two(), 7));
    literal.validate().unwrap();
}

#[test]
fn wheel_stabilizer_generator() {
    let stab = graph_to_stabilizer(&wheel_graph(two(), 7)).unwrap();
    let expected = FpMatrix::from_rows(two(), &WHEEL_G).unwrap();
    assert!(row_space_equal(stab.code.generator(), &expected).unwrap());
    // The displayed matrix is already in reduced form.
    assert_eq!(stab.code.generator(), &expected);
    let my = wheel_graph(two(), 7).output_block();
    for g in &stab.gens {
        assert_eq!(g.vector.d, my.vec_mul(&g.vector.a).unwrap());
    }
}

#[test]
fn wheel_enumerators_and_distance() {
    let code = graph_to_stabilizer(&wheel_graph(two(), 7)).unwrap().code;
    let w = weight_distribution(&code, DEFAULT_BUDGET).unwrap();
    assert_eq!(w.to_string(), "x^7 + 21*x^3*y^4 + 42*x*y^6");
    let dual = weight_distribution(&symp_dual(&code), DEFAULT_BUDGET).unwrap();
    assert_eq!(
        dual.to_string(),
        "x^7 + 21*x^4*y^3 + 21*x^3*y^4 + 126*x^2*y^5 + 42*x*y^6 + 45*y^7"
    );
    assert_eq!(dual.total(), 256);
    assert_eq!(min_distance(&code, DEFAULT_BUDGET).unwrap(), 3);
}

#[test]
fn wheel_gf4_generator() {
    let code = graph_to_stabilizer(&wheel_graph(two(), 7)).unwrap().code;
    let g4 = to_gf4(&code).unwrap();
    let expected: Vec<Vec<Gf4>> = WHEEL_G4
        .iter()
        .map(|row| row.iter().map(|&v| gf4(v)).collect())
        .collect();
    assert_eq!(g4, expected);
    assert_eq!(gf4_rank(&g4), 6);
}

#[test]
fn steane_literal_matches_catalog() {
    let literal = SymplecticCode::from_rows(two(), 7, &STEANE_G).unwrap();
    assert!(literal.same_space(&steane_code()));
    assert!(literal.is_self_orthogonal());
    assert_eq!(min_distance(&literal, DEFAULT_BUDGET).unwrap(), 3);
}

#[test]
fn steane_round_trip() {
    let steane = SymplecticCode::from_rows(two(), 7, &STEANE_G).unwrap();
    let conv = stabilizer_to_graph(&steane).unwrap();
    conv.graph.validate().unwrap();
    assert_eq!((conv.graph.k(), conv.graph.n()), (1, 7));
    let report = verify_roundtrip(&steane, &conv, DEFAULT_BUDGET).unwrap();
    assert!(report.row_space_equal);
    assert!(report.enumerator_equal);
}

#[test]
fn all_ones_extension_of_steane_is_self_dual() {
    let mut rows = STEANE_G.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
    let mut ones = vec![1i64; 7];
    ones.extend([1i64; 7]);
    rows.push(ones);
    let extended = SymplecticCode::from_rows(two(), 7, &rows).unwrap();
    assert!(extended.is_self_dual());
}

#[test]
fn hamming_graph_is_a_valid_witness() {
    let g = GraphCode::from_rows(two(), 1, 7, &HAMMING_ADJ).unwrap();
    g.validate().unwrap();
    assert_eq!(g.b_block().rank(), 1);
    let stab = graph_to_stabilizer(&g).unwrap();
    assert_eq!(stab.code.dim(), 6);
    assert_eq!(min_distance(&stab.code, DEFAULT_BUDGET).unwrap(), 3);
    // Equivalent codes share their weight enumerators.
    assert_eq!(
        weight_distribution(&stab.code, DEFAULT_BUDGET).unwrap(),
        weight_distribution(&steane_code(), DEFAULT_BUDGET).unwrap()
    );
    assert!(gram_matrix(&g, DEFAULT_ORACLE_BUDGET)
        .unwrap()
        .is_identity(1e-12));
    assert!(check_stabilizer(&g, DEFAULT_ORACLE_BUDGET).unwrap().passed);
    let proj = check_projector(&g, DEFAULT_ORACLE_BUDGET).unwrap();
    assert!(proj.passed, "{proj:?}");
}

#[test]
fn wheel_state_checks() {
    let g = wheel_graph(two(), 7);
    assert!(gram_matrix(&g, DEFAULT_ORACLE_BUDGET)
        .unwrap()
        .is_identity(1e-12));
    assert!(check_stabilizer(&g, DEFAULT_ORACLE_BUDGET).unwrap().passed);
    let proj = check_projector(&g, DEFAULT_ORACLE_BUDGET).unwrap();
    assert!((proj.trace.re - 2.0).abs() < 1e-9);
}

#[test]
fn wheel_code_round_trip() {
    let code = graph_to_stabilizer(&wheel_graph(two(), 7)).unwrap().code;
    let conv = stabilizer_to_graph(&code).unwrap();
    assert!(verify_roundtrip(&code, &conv, DEFAULT_BUDGET)
        .unwrap()
        .passed());
}
