//! Hand-built algebras used as oracles across the unit tests. These are
//! constructed directly from multiplication tables rather than through the
//! presentation compiler, so the two construction paths check each other.

use crate::hopf::{zero_matrix, zero_tensor3, zero_vector, HopfAlgebraData};
use crate::scalars::RatFunc;

/// Group algebra of the cyclic group of order `n`: basis g^0 .. g^{n-1},
/// grouplike coproduct, S(g^i) = g^{-i}.
pub fn cyclic_group(n: usize) -> HopfAlgebraData {
    let labels: Vec<String> = (0..n)
        .map(|i| if i == 0 { "1".into() } else { format!("g^{i}") })
        .collect();
    let mut mult = zero_tensor3(n);
    let mut comult = zero_tensor3(n);
    let mut antipode = zero_matrix(n, n);
    for i in 0..n {
        for j in 0..n {
            mult[i][j][(i + j) % n] = RatFunc::one();
        }
        comult[i][i][i] = RatFunc::one();
        antipode[i][(n - i) % n] = RatFunc::one();
    }
    let mut unit = zero_vector(n);
    unit[0] = RatFunc::one();
    let counit = vec![RatFunc::one(); n];
    HopfAlgebraData::build("C_n", labels, mult, unit, comult, counit, antipode).unwrap()
}

/// Four-dimensional Hopf algebra on basis {1, x, y, xy} with relations
/// x^2 = 0, y^2 = y, yx = x - xy.
pub fn dqs() -> HopfAlgebraData {
    let labels: Vec<String> = ["1", "x", "y", "x*y"].iter().map(|s| s.to_string()).collect();
    let one = RatFunc::one;
    let rf = RatFunc::from_int;
    let mut mult = zero_tensor3(4);
    for j in 0..4 {
        mult[0][j][j] = one();
        if j > 0 {
            mult[j][0][j] = one();
        }
    }
    mult[1][2][3] = one(); // x*y = xy
    mult[2][1][1] = one(); // y*x = x - xy
    mult[2][1][3] = rf(-1);
    mult[2][2][2] = one(); // y*y = y
    mult[3][2][3] = one(); // xy*y = xy
    // x*x = x*xy = xy*x = y*xy = xy*xy = 0

    let mut comult = zero_tensor3(4);
    comult[0][0][0] = one();
    // Δ(x) = x⊗1 + 1⊗x - 2 y⊗x
    comult[1][1][0] = one();
    comult[1][0][1] = one();
    comult[1][2][1] = rf(-2);
    // Δ(y) = y⊗1 + 1⊗y - 2 y⊗y
    comult[2][2][0] = one();
    comult[2][0][2] = one();
    comult[2][2][2] = rf(-2);
    // Δ(xy) = xy⊗1 + 1⊗xy + x⊗y - y⊗x - 2 xy⊗y
    comult[3][3][0] = one();
    comult[3][0][3] = one();
    comult[3][1][2] = one();
    comult[3][2][1] = rf(-1);
    comult[3][3][2] = rf(-2);

    let mut unit = zero_vector(4);
    unit[0] = one();
    let mut counit = zero_vector(4);
    counit[0] = one();

    let mut antipode = zero_matrix(4, 4);
    antipode[0][0] = one();
    // S(x) = x - 2 xy, S(y) = y, S(xy) = x - xy
    antipode[1][1] = one();
    antipode[1][3] = rf(-2);
    antipode[2][2] = one();
    antipode[3][1] = one();
    antipode[3][3] = rf(-1);

    HopfAlgebraData::build("dqs", labels, mult, unit, comult, counit, antipode).unwrap()
}

/// The fermionic line: A = {1, ξ}, H = {1, σ} with ξ² = σ² = 0 and cross
/// relation σξ = 1 − ξσ. These are braided Hopf algebras (odd primitive
/// generators), so the factors are assembled without the unbraided axiom
/// gate.
pub fn fermionic_line_parts() -> (
    HopfAlgebraData,
    HopfAlgebraData,
    crate::smash::Tensor4,
) {
    let grassmann_line = |id: &str, gen: &str| {
        let mut mult = zero_tensor3(2);
        mult[0][0][0] = RatFunc::one();
        mult[0][1][1] = RatFunc::one();
        mult[1][0][1] = RatFunc::one();
        let mut comult = zero_tensor3(2);
        comult[0][0][0] = RatFunc::one();
        comult[1][1][0] = RatFunc::one();
        comult[1][0][1] = RatFunc::one();
        let mut antipode = zero_matrix(2, 2);
        antipode[0][0] = RatFunc::one();
        antipode[1][1] = RatFunc::from_int(-1);
        let mut unit = zero_vector(2);
        unit[0] = RatFunc::one();
        let mut counit = zero_vector(2);
        counit[0] = RatFunc::one();
        HopfAlgebraData::assemble(
            id,
            vec!["1".into(), gen.into()],
            mult,
            unit,
            comult,
            counit,
            antipode,
        )
        .unwrap()
    };
    let a = grassmann_line("ferm-A", "xi");
    let h = grassmann_line("ferm-H", "sigma");
    let mut cross = vec![vec![vec![vec![RatFunc::zero(); 2]; 2]; 2]; 2];
    for i in 0..2 {
        cross[0][i][i][0] = RatFunc::one(); // 1_H·f^i = f^i·1_H
    }
    cross[1][0][0][1] = RatFunc::one(); // σ·1_A = 1_A·σ
    cross[1][1][0][0] = RatFunc::one(); // σξ = 1 − ξσ
    cross[1][1][1][1] = RatFunc::from_int(-1);
    (a, h, cross)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::linalg;

    #[test]
    fn oracles_pass_all_axioms() {
        for h in [cyclic_group(2), cyclic_group(5), dqs()] {
            assert!(h.check_axioms().all_pass(), "{}", h.id);
        }
    }

    #[test]
    fn dqs_antipode_squared_is_not_identity() {
        let h = dqs();
        let s2: Vec<Vec<RatFunc>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        (0..4).fold(RatFunc::zero(), |acc, k| {
                            &acc + &(&h.antipode[i][k] * &h.antipode[k][j])
                        })
                    })
                    .collect()
            })
            .collect();
        assert_ne!(s2, linalg::identity(4));
        // S^4 = id
        let s4: Vec<Vec<RatFunc>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        (0..4).fold(RatFunc::zero(), |acc, k| &acc + &(&s2[i][k] * &s2[k][j]))
                    })
                    .collect()
            })
            .collect();
        assert_eq!(s4, linalg::identity(4));
    }

    #[test]
    fn broken_antipode_is_rejected() {
        let good = dqs();
        let err = HopfAlgebraData::build(
            "bad",
            good.labels.clone(),
            good.mult.clone(),
            good.unit.clone(),
            good.comult.clone(),
            good.counit.clone(),
            linalg::identity(4),
        )
        .unwrap_err();
        match err {
            Error::AxiomViolation { name, .. } => assert_eq!(name, "antipode-law"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn broken_counit_is_rejected() {
        let good = dqs();
        let mut counit = good.counit.clone();
        counit[1] = RatFunc::one();
        let err = HopfAlgebraData::build(
            "bad",
            good.labels.clone(),
            good.mult.clone(),
            good.unit.clone(),
            good.comult.clone(),
            counit,
            good.antipode.clone(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { .. }));
    }
}
