//! The four worked models used throughout the test suites.

use crate::linalg::IntMatrix;
use crate::toric::ModelMatrix;

/// Square: columns (2,0,0), (1,1,0), (1,0,1), (0,1,1); P_A is a square
/// with the quadric xw = yz as its toric relation. Observed set {1,4}.
pub fn square_model() -> ModelMatrix {
    let a = IntMatrix::from_i64(&[&[2, 1, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
    ModelMatrix::with_names(
        a,
        vec!["x".into(), "y".into(), "z".into(), "w".into()],
        false,
    )
    .unwrap()
}

/// Triangle with two interior points; observed set {4,5}.
pub fn tri2pts_model() -> ModelMatrix {
    let a = IntMatrix::from_i64(&[&[4, 0, 0, 2, 1], &[0, 4, 0, 1, 2], &[0, 0, 4, 1, 1]]);
    ModelMatrix::with_names(
        a,
        vec!["x".into(), "y".into(), "z".into(), "u".into(), "v".into()],
        false,
    )
    .unwrap()
}

/// Triangle with two interior points in general position ("blob");
/// observed set {4,5}.
pub fn blob_model() -> ModelMatrix {
    let a = IntMatrix::from_i64(&[&[3, 4, 0, 3, 2], &[0, 1, 2, 1, 1], &[2, 0, 3, 1, 2]]);
    ModelMatrix::with_names(
        a,
        vec!["x".into(), "y".into(), "z".into(), "u".into(), "v".into()],
        false,
    )
    .unwrap()
}

/// Three binary variables on a path: margins (12) and (23); observed set
/// {1,...,5}, which sits inside the proper facial set {1,...,6}.
pub fn hierarchical_model() -> ModelMatrix {
    let a = IntMatrix::from_i64(&[
        &[1, 1, 0, 0, 0, 0, 0, 0],
        &[0, 0, 1, 1, 0, 0, 0, 0],
        &[0, 0, 0, 0, 1, 1, 0, 0],
        &[0, 0, 0, 0, 0, 0, 1, 1],
        &[1, 0, 0, 0, 1, 0, 0, 0],
        &[0, 1, 0, 0, 0, 1, 0, 0],
        &[0, 0, 1, 0, 0, 0, 1, 0],
        &[0, 0, 0, 1, 0, 0, 0, 1],
    ]);
    let names = ["p111", "p112", "p121", "p122", "p211", "p212", "p221", "p222"];
    ModelMatrix::with_names(a, names.iter().map(|s| s.to_string()).collect(), false).unwrap()
}

/// Triangle (vertices scaled to sum 3) plus one interior point: the
/// polytope of the minimal-facial-set example.
pub fn triangle_interior_model() -> ModelMatrix {
    let a = IntMatrix::from_i64(&[&[3, 0, 0, 1], &[0, 3, 0, 1], &[0, 0, 3, 1]]);
    ModelMatrix::new(a).unwrap()
}

/// Simplex model: N times the identity; every subset is facial.
pub fn simplex_model(n: usize) -> ModelMatrix {
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = vec![0i64; n];
        row[i] = 2;
        rows.push(row);
    }
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    ModelMatrix::new(IntMatrix::from_i64(&refs)).unwrap()
}

/// The observed sets paired with each model in the worked examples
/// (1-based to match the write-ups; convert at the call site).
pub fn observed_one_based(model: &str) -> Vec<usize> {
    match model {
        "square" => vec![1, 4],
        "tri2pts" | "blob" => vec![4, 5],
        "hierarchical" => vec![1, 2, 3, 4, 5],
        other => panic!("unknown model {other}"),
    }
}
