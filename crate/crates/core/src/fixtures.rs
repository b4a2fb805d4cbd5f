//! Small named arrangements used throughout the tests and the README.

use crate::arrangement::MultiArrangement;

/// `{x = 0}` in `A^1`.
pub fn single_line() -> MultiArrangement {
    MultiArrangement::from_i64(1, &[(&[1], 0, 1)]).unwrap()
}

/// `{x = 0, y = 0}` in `A^2`.
pub fn boolean_pair() -> MultiArrangement {
    MultiArrangement::from_i64(2, &[(&[1, 0], 0, 1), (&[0, 1], 0, 1)]).unwrap()
}

/// `{x = 0, y = 0, x + y = 0}`.
pub fn central_three_lines() -> MultiArrangement {
    MultiArrangement::from_i64(2, &[(&[1, 0], 0, 1), (&[0, 1], 0, 1), (&[1, 1], 0, 1)]).unwrap()
}

/// `{x = 0, y = 0, x + y = 1}`: three lines in general position.
pub fn triangle() -> MultiArrangement {
    MultiArrangement::from_i64(2, &[(&[1, 0], 0, 1), (&[0, 1], 0, 1), (&[1, 1], -1, 1)]).unwrap()
}

/// `{x = 0, x = 1}` in `A^2`.
pub fn parallel_pair() -> MultiArrangement {
    MultiArrangement::from_i64(2, &[(&[1, 0], 0, 1), (&[1, 0], -1, 1)]).unwrap()
}

/// `{x = 0, x = 1, y = 0}`.
pub fn parallel_plus_transversal() -> MultiArrangement {
    MultiArrangement::from_i64(2, &[(&[1, 0], 0, 1), (&[1, 0], -1, 1), (&[0, 1], 0, 1)]).unwrap()
}

/// `{x = 0, y = 0, x + y = 0, x - y = 0}`: generic central, four lines.
pub fn central_four_lines() -> MultiArrangement {
    MultiArrangement::from_i64(
        2,
        &[(&[1, 0], 0, 1), (&[0, 1], 0, 1), (&[1, 1], 0, 1), (&[1, -1], 0, 1)],
    )
    .unwrap()
}

/// `x^2 y = 0`: the Boolean pair with multiplicities `(2, 1)`.
pub fn two_one_multi() -> MultiArrangement {
    MultiArrangement::from_i64(2, &[(&[1, 0], 0, 2), (&[0, 1], 0, 1)]).unwrap()
}

/// The suite of named arrangements with their labels.
pub fn named_suite() -> Vec<(&'static str, MultiArrangement)> {
    vec![
        ("single line", single_line()),
        ("boolean pair", boolean_pair()),
        ("central three lines", central_three_lines()),
        ("triangle", triangle()),
        ("parallel plus transversal", parallel_plus_transversal()),
        ("central four lines", central_four_lines()),
        ("x^2 y", two_one_multi()),
    ]
}
