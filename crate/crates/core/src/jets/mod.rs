//! Finite-field jets and brute-force counts of contact loci.
//!
//! An `m`-jet over `F_p` is a matrix `a` with `a[i][k]` the `k`-th derivative
//! of the coordinate `x_i` at `t = 0`, so that `γ(x_i) = sum_k a[i][k] t^k / k!`.
//! Formal derivatives act by `D(x_i^{(k)}) = x_i^{(k+1)}`. The counters here
//! never look at the decomposition of the contact locus; they are the
//! independent side of every comparison.

mod count;
mod tower;

pub use count::{
    count_contact, count_contact_raw, count_contact_with, count_restricted, count_restricted_raw,
    count_restricted_with, good_reduction_check,
};
pub use tower::{formal_derivative_eval, DerivativeTower, JetPoint, ReducedArrangement};
