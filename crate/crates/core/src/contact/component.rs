use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::arith::{factorial, IntPoly, Rational};
use crate::arrangement::{restrict_forms, Hyperplane, MultiArrangement};
use crate::error::{Error, Result};
use crate::lattice::{char_poly, complement_betti};
use crate::linalg::{pullback, AffineFlat, Pullback, RationalField};

use super::ChainDescriptor;

/// The pullback of `h_i^{(j_i)}` to one factor of `X_j`, in that factor's
/// intrinsic coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestrictedForm {
    pub hyperplane: usize,
    #[serde(serialize_with = "ser_rationals")]
    pub coeffs: Vec<Rational>,
    #[serde(with = "crate::arith::serde_rational")]
    pub constant: Rational,
    pub exponent: u32,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&crate::arith::format_rational(r))?;
    }
    seq.end()
}

impl RestrictedForm {
    /// `c·u + b` at a rational point of the factor.
    pub fn eval(&self, u: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(u)
            .fold(self.constant.clone(), |acc, (c, x)| acc + c * x)
    }
}

/// One factor of `X_j`: level 0 is `Z_0 = ∩_{S_0} H`, level `k >= 1` is the
/// linear flat `∩_{S_k} H^center`.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentFactor {
    pub level: u32,
    #[serde(skip)]
    pub flat: AffineFlat<Rational>,
    pub dim: usize,
    pub arrangement: MultiArrangement,
    /// Forms of the hyperplanes with `j_i = level`.
    pub forms: Vec<RestrictedForm>,
}

/// The component `X_j` with the arrangement `A_j` on it.
#[derive(Debug, Clone, Serialize)]
pub struct Component {
    pub descriptor: ChainDescriptor,
    pub factors: Vec<ComponentFactor>,
    /// `A_j` as a single arrangement on `X_j`.
    #[serde(skip)]
    pub product: MultiArrangement,
    pub betti: IntPoly,
    pub char_poly: IntPoly,
    /// `prod_i (j_i!)^{s_i}`, the right-hand side of the fiber equation.
    #[serde(with = "crate::arith::serde_bigint")]
    pub fiber_constant: BigInt,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim).sum()
    }

    /// Rank of `A_j`, the sum of the factor ranks.
    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.arrangement.rank()).sum()
    }

    /// Textual form of the fiber equation; `xk_t` is intrinsic coordinate
    /// `t` of the level-`k` factor, e.g. `(x0_0)^2 * (x1_0 + x1_1) = 2`.
    pub fn fiber_equation(&self) -> String {
        let mut parts = Vec::new();
        for f in &self.factors {
            for form in &f.forms {
                let mut terms: Vec<String> = form
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(t, c)| {
                        let v = format!("x{}_{t}", f.level);
                        if c.is_one() {
                            v
                        } else if (-c).is_one() {
                            format!("-{v}")
                        } else {
                            format!("{}*{v}", crate::arith::format_rational(c))
                        }
                    })
                    .collect();
                if !num_traits::Zero::is_zero(&form.constant) || terms.is_empty() {
                    terms.push(crate::arith::format_rational(&form.constant));
                }
                let base = format!("({})", terms.join(" + ").replace("+ -", "- "));
                parts.push(if form.exponent == 1 {
                    base
                } else {
                    format!("{base}^{}", form.exponent)
                });
            }
        }
        let lhs = if parts.is_empty() { "1".to_string() } else { parts.join(" * ") };
        format!("{lhs} = {}", self.fiber_constant)
    }

    /// Product of all restricted forms at a point given per factor.
    pub fn fiber_value(&self, point: &[Vec<Rational>]) -> Rational {
        let mut acc = Rational::one();
        for (f, u) in self.factors.iter().zip(point) {
            for form in &f.forms {
                acc *= num_traits::pow(form.eval(u), form.exponent as usize);
            }
        }
        acc
    }
}

fn restricted_form(i: usize, h: &Hyperplane, level: u32, flat: &AffineFlat<Rational>) -> Result<RestrictedForm> {
    let coeffs = h.coeffs_rational();
    let constant = if level == 0 { h.constant().clone() } else { Rational::from_integer(0.into()) };
    let (coeffs, constant) = match pullback(&RationalField, flat, &coeffs, &constant) {
        Pullback::Vanishes => return Err(Error::HyperplaneContainsFlat(i)),
        Pullback::NonzeroConstant(c) => (vec![Rational::from_integer(0.into()); flat.dim()], c),
        Pullback::Form { coeffs, constant } => (coeffs, constant),
    };
    Ok(RestrictedForm {
        hyperplane: i,
        coeffs,
        constant,
        exponent: h.multiplicity(),
    })
}

/// Builds `X_j` and `A_j` for a validated descriptor. The zero descriptor
/// gives the complement itself.
pub fn build_component(arr: &MultiArrangement, j: &ChainDescriptor) -> Result<Component> {
    j.validate(arr)?;
    let max_j = j.j.iter().copied().max().unwrap_or(0);
    let mut factors = Vec::new();
    for level in 0..=j.m {
        // Past max(j) both S_k and J_k are empty: a free copy of A^n.
        if level > 0 && level > max_j {
            factors.push(free_factor(arr.dim(), level));
            continue;
        }
        let above = j.level_set(level);
        let exact = j.level_exact(level);
        let flat = if level == 0 {
            arr.subset_flat(&above)
                .ok_or_else(|| Error::InvalidDescriptor("S_0 has empty intersection".into()))?
        } else {
            arr.center_flat(&above)
        };
        let forms_iter = exact.iter().map(|&i| {
            let h = &arr.hyperplanes()[i];
            (i, if level == 0 { h.clone() } else { h.center() })
        });
        let (arrangement, _) = restrict_forms(forms_iter, &flat)?;
        let forms = exact
            .iter()
            .map(|&i| restricted_form(i, &arr.hyperplanes()[i], level, &flat))
            .collect::<Result<Vec<_>>>()?;
        factors.push(ComponentFactor {
            level,
            dim: flat.dim(),
            flat,
            arrangement,
            forms,
        });
    }
    let product = MultiArrangement::product_all(factors.iter().map(|f| &f.arrangement));
    let mut betti = IntPoly::one();
    let mut chi = IntPoly::one();
    for f in &factors {
        if f.arrangement.is_empty() {
            chi = &chi * &IntPoly::monomial(BigInt::one(), f.dim);
        } else {
            betti = &betti * &complement_betti(&f.arrangement)?;
            chi = &chi * &char_poly(&f.arrangement)?;
        }
    }
    let fiber_constant = j
        .j
        .iter()
        .zip(arr.multiplicities())
        .map(|(&ji, s)| num_traits::pow(factorial(ji), s as usize))
        .product();
    Ok(Component {
        descriptor: j.clone(),
        factors,
        product,
        betti,
        char_poly: chi,
        fiber_constant,
    })
}

fn free_factor(n: usize, level: u32) -> ComponentFactor {
    ComponentFactor {
        level,
        flat: AffineFlat::full(&RationalField, n),
        dim: n,
        arrangement: MultiArrangement::empty(n),
        forms: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn central_lines_order_one() {
        let a = central_three_lines();
        let c = build_component(&a, &ChainDescriptor::new(vec![1, 0, 0], &a)).unwrap();
        assert_eq!(c.factors.len(), 2);
        assert_eq!(c.factors[0].dim, 1);
        assert_eq!(c.factors[0].arrangement.len(), 1);
        assert_eq!(c.factors[0].arrangement.hyperplanes()[0].multiplicity(), 2);
        assert_eq!(c.factors[1].dim, 2);
        assert_eq!(c.betti, IntPoly::from_i64(&[1, 2, 1]));
        // q (q - 1)^2
        assert_eq!(c.char_poly, IntPoly::from_i64(&[0, 1, -2, 1]));
        assert_eq!(c.dim(), 3);
        assert_eq!(c.rank(), 2);
        assert_eq!(c.fiber_constant, BigInt::one());
    }

    #[test]
    fn zero_descriptor_is_the_complement() {
        let t = triangle();
        let c = build_component(&t, &ChainDescriptor::zero(3)).unwrap();
        assert_eq!(c.factors.len(), 1);
        assert_eq!(c.char_poly, crate::lattice::char_poly(&t).unwrap());
        assert_eq!(c.product.len(), 3);
    }

    #[test]
    fn free_levels_are_affine_spaces() {
        let a = central_three_lines();
        let c = build_component(&a, &ChainDescriptor::new(vec![3, 0, 0], &a)).unwrap();
        assert_eq!(c.factors.len(), 4);
        assert_eq!(c.dim(), 1 + 1 + 1 + 2);
        assert_eq!(c.fiber_constant, BigInt::from(6));
        assert_eq!(c.rank(), 2);
    }

    #[test]
    fn affine_constant_forms_are_kept() {
        // On the line x = 1 the hyperplane x = 0 is the nonzero constant 1.
        let a = parallel_plus_transversal();
        let c = build_component(&a, &ChainDescriptor::new(vec![0, 1, 0], &a)).unwrap();
        let f0 = &c.factors[0];
        assert_eq!(f0.arrangement.len(), 1);
        let form = f0.forms.iter().find(|f| f.hyperplane == 0).unwrap();
        assert!(form.coeffs.iter().all(num_traits::Zero::is_zero));
        assert_eq!(form.constant, Rational::one());
    }

    #[test]
    fn fiber_equation_text() {
        let a = two_one_multi();
        let c = build_component(&a, &ChainDescriptor::new(vec![0, 1], &a)).unwrap();
        assert!(c.fiber_equation().ends_with("= 1"), "{}", c.fiber_equation());
    }
}
