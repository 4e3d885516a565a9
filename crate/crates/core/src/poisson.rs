//! The Poisson structure on the invariants and the reduced vector field.
//!
//! The bracket table is
//!
//! ```text
//!   {I₂,I₃} = −2I₄    {I₂,I₄} = 2I₃    {I₃,I₄} = −2I₂
//! ```
//!
//! with `I₁` central. On polynomials in `(I₂,I₃,I₄)` the bracket extends by
//! the Leibniz rule, `I₁` being treated as a constant parameter. The induced
//! vector field of `H` is `İ = 2(x × ∇H)`; this orientation is the one the
//! bracket table fixes (it is the time reverse of the canonical reduced flow
//! of `invariants::full_flow_field`).

use crate::polyalg::{rat, Poly3};

#[derive(Debug, thiserror::Error)]
pub enum PoissonError {
    #[error("generator index {0} out of range 1..=4")]
    BadIndex(usize),
}

/// Table entry `{I_i, I_j}` for `i, j` in `1..=4`.
pub fn bracket_generators(i: usize, j: usize) -> Result<Poly3, PoissonError> {
    if !(1..=4).contains(&i) {
        return Err(PoissonError::BadIndex(i));
    }
    if !(1..=4).contains(&j) {
        return Err(PoissonError::BadIndex(j));
    }
    // axes 0,1,2 correspond to I2,I3,I4
    let entry = |axis: usize, sign: i64| Poly3::var(axis).scale(&rat(2 * sign));
    Ok(match (i, j) {
        (2, 3) => entry(2, -1),
        (3, 2) => entry(2, 1),
        (2, 4) => entry(1, 1),
        (4, 2) => entry(1, -1),
        (3, 4) => entry(0, -1),
        (4, 3) => entry(0, 1),
        _ => Poly3::zero(),
    })
}

/// `{f, g} = Σ_{i<j} {I_i,I_j} (∂f/∂I_i ∂g/∂I_j − ∂f/∂I_j ∂g/∂I_i)`,
/// exact in the coefficients.
pub fn bracket(f: &Poly3, g: &Poly3) -> Poly3 {
    let df: Vec<Poly3> = (0..3).map(|a| f.partial(a)).collect();
    let dg: Vec<Poly3> = (0..3).map(|a| g.partial(a)).collect();
    // table entries for the pairs (I2,I3), (I2,I4), (I3,I4)
    let pairs = [(0usize, 1usize, 2usize, -1i64), (0, 2, 1, 1), (1, 2, 0, -1)];
    let mut out = Poly3::zero();
    for (a, b, axis, sign) in pairs {
        let skew = &(&df[a] * &dg[b]) - &(&df[b] * &dg[a]);
        if !skew.is_zero() {
            out = &out + &(&Poly3::var(axis) * &skew).scale(&rat(2 * sign));
        }
    }
    out
}

/// The Casimir `K = I₂² + I₃² + I₄²`.
pub fn casimir() -> Poly3 {
    let mut k = Poly3::zero();
    for axis in 0..3 {
        k = &k + &(&Poly3::var(axis) * &Poly3::var(axis));
    }
    k
}

/// Componentwise reduced dynamics `(İ₂, İ₃, İ₄) = ({I₂,H}, {I₃,H}, {I₄,H})`,
/// equal to `2(x × ∇H)` as exact polynomial identities.
pub fn reduced_vector_field(h: &Poly3) -> [Poly3; 3] {
    [
        bracket(&Poly3::var(0), h),
        bracket(&Poly3::var(1), h),
        bracket(&Poly3::var(2), h),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{ratio, Mono, Rat};
    use proptest::prelude::*;

    fn var(axis: usize) -> Poly3 {
        Poly3::var(axis)
    }

    #[test]
    fn table_entries() {
        // {I2,I3} = -2 I4
        assert_eq!(bracket_generators(2, 3).unwrap(), var(2).scale(&rat(-2)));
        // I1 is a Casimir
        assert_eq!(bracket_generators(1, 4).unwrap(), Poly3::zero());
        assert_eq!(bracket_generators(4, 1).unwrap(), Poly3::zero());
        // antisymmetric pair: {I4,I2} = -{I2,I4} = -2 I3
        assert_eq!(
            bracket_generators(4, 2).unwrap(),
            -&bracket_generators(2, 4).unwrap()
        );
        assert_eq!(bracket_generators(4, 2).unwrap(), var(1).scale(&rat(-2)));
        assert!(bracket_generators(0, 2).is_err());
        assert!(bracket_generators(2, 5).is_err());
    }

    #[test]
    fn table_is_antisymmetric() {
        for i in 1..=4 {
            for j in 1..=4 {
                let fwd = bracket_generators(i, j).unwrap();
                let bwd = bracket_generators(j, i).unwrap();
                assert_eq!(fwd, -&bwd, "antisymmetry fails at ({i},{j})");
            }
        }
    }

    #[test]
    fn leibniz_example_from_table() {
        // {I2, I3^2} = 2 I3 {I2,I3} = -4 I3 I4
        let i3sq = &var(1) * &var(1);
        let got = bracket(&var(0), &i3sq);
        assert_eq!(got, Poly3::monomial(Mono([0, 1, 1]), rat(-4)));
    }

    #[test]
    fn casimir_brackets_vanish() {
        let k = casimir();
        for axis in 0..3 {
            assert!(bracket(&k, &var(axis)).is_zero());
        }
    }

    #[test]
    fn reduced_field_of_height_function() {
        // H = I2 -> (0, 2 I4, -2 I3): rigid rotation about the I2 axis
        let [f2, f3, f4] = reduced_vector_field(&var(0));
        assert!(f2.is_zero());
        assert_eq!(f3, var(2).scale(&rat(2)));
        assert_eq!(f4, var(1).scale(&rat(-2)));
    }

    #[test]
    fn reduced_field_of_casimir_vanishes() {
        let [f2, f3, f4] = reduced_vector_field(&casimir());
        assert!(f2.is_zero() && f3.is_zero() && f4.is_zero());
    }

    #[test]
    fn diagonal_quadratic_field_vanishes_on_axes() {
        // H = a1 I2^2 + a2 I3^2 + a3 I4^2: all three coordinate axes are
        // equilibria of the symbolic field
        let mut h = Poly3::zero();
        h.add_term(Mono([2, 0, 0]), rat(1));
        h.add_term(Mono([0, 2, 0]), rat(2));
        h.add_term(Mono([0, 0, 2]), rat(4));
        let field = reduced_vector_field(&h);
        for axis in 0..3 {
            let mut pt: [Rat; 3] = [rat(0), rat(0), rat(0)];
            pt[axis] = ratio(7, 3);
            for comp in &field {
                assert!(
                    num_traits::Zero::is_zero(&comp.eval_rat(&pt)),
                    "field nonzero on axis {axis}"
                );
            }
        }
    }

    #[test]
    fn reduced_field_matches_cross_product_form() {
        // 2 (x cross grad H) with components indexed (2,3,4)
        let mut h = Poly3::zero();
        h.add_term(Mono([2, 0, 0]), ratio(3, 2));
        h.add_term(Mono([1, 1, 1]), rat(-2));
        h.add_term(Mono([0, 0, 3]), ratio(5, 7));
        let field = reduced_vector_field(&h);
        let g: Vec<Poly3> = (0..3).map(|a| h.partial(a)).collect();
        let cross = [
            &(&var(1) * &g[2]) - &(&var(2) * &g[1]),
            &(&var(2) * &g[0]) - &(&var(0) * &g[2]),
            &(&var(0) * &g[1]) - &(&var(1) * &g[0]),
        ];
        for (f, c) in field.iter().zip(cross.iter()) {
            assert_eq!(f, &c.scale(&rat(2)));
        }
    }

    fn arb_poly(max_deg: u32) -> impl Strategy<Value = Poly3> {
        proptest::collection::vec(
            (0..=max_deg, 0..=max_deg, 0..=max_deg, -6i64..=6, 1i64..=4),
            0..5,
        )
        .prop_map(move |terms| {
            let mut poly = Poly3::zero();
            for (k2, k3, k4, num, den) in terms {
                if k2 + k3 + k4 <= max_deg {
                    poly.add_term(Mono([k2, k3, k4]), ratio(num, den));
                }
            }
            poly
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn bracket_is_antisymmetric(f in arb_poly(3), g in arb_poly(3)) {
            prop_assert_eq!(bracket(&f, &g), -&bracket(&g, &f));
        }

        #[test]
        fn bracket_satisfies_jacobi(f in arb_poly(3), g in arb_poly(3), h in arb_poly(3)) {
            let lhs = &(&bracket(&f, &bracket(&g, &h)) + &bracket(&g, &bracket(&h, &f)))
                + &bracket(&h, &bracket(&f, &g));
            prop_assert!(lhs.is_zero());
        }

        #[test]
        fn casimir_is_central(g in arb_poly(4)) {
            prop_assert!(bracket(&casimir(), &g).is_zero());
        }

        #[test]
        fn reduced_field_conserves_h_and_casimir(h in arb_poly(3)) {
            let field = reduced_vector_field(&h);
            // field . grad H = 0 and field . x = 0 as exact identities
            let mut along_h = Poly3::zero();
            let mut along_x = Poly3::zero();
            for axis in 0..3 {
                along_h = &along_h + &(&field[axis] * &h.partial(axis));
                along_x = &along_x + &(&field[axis] * &Poly3::var(axis));
            }
            prop_assert!(along_h.is_zero());
            prop_assert!(along_x.is_zero());
        }
    }
}
