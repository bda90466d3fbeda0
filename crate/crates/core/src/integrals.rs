//! Integration machinery: trace integral, modified trace, delta function,
//! vacuum projectors, vacuum-expectation integrals on both factors, and
//! the Θ non-triviality diagnostic.

use crate::duality::DualPair;
use crate::error::{Error, Result};
use crate::hopf::{zero_vector, Element, Matrix};
use crate::linalg;
use crate::scalars::RatFunc;
use crate::smash::{Factor, SmashAlgebra, SmashElement};

/// The vacuum projectors E ~ |Ω_U⟩⟨Ω_A| and Ē ~ |Ω_A⟩⟨Ω_U|.
#[derive(Debug, Clone)]
pub struct ProjectorPair {
    pub e: SmashElement,
    pub ebar: SmashElement,
}

#[derive(Debug, Clone)]
pub struct IntegralResult {
    pub value: RatFunc,
    /// The normalized right delta function δ^R_A.
    pub delta: Element,
    /// The smash-algebra realization (Ē·a·E, or E·z·Ē on the H side).
    pub realization: SmashElement,
    /// Human-readable normalization descriptor.
    pub convention: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariance {
    Right,
    Left,
}

/// c with v = c·w, if it exists. Both zero gives 0; w = 0 ≠ v gives None.
fn proportionality(v: &[RatFunc], w: &[RatFunc]) -> Option<RatFunc> {
    match w.iter().position(|c| !c.is_zero()) {
        None => {
            if v.iter().all(|c| c.is_zero()) {
                Some(RatFunc::zero())
            } else {
                None
            }
        }
        Some(k) => {
            let c = v[k].div(&w[k]).ok()?;
            for (a, b) in v.iter().zip(w) {
                if *a != &c * b {
                    return None;
                }
            }
            Some(c)
        }
    }
}

fn flatten(coeff: &Matrix) -> Vec<RatFunc> {
    coeff.iter().flatten().cloned().collect()
}

/// Dual bases for the canonical element Σ e_i ⊗ f̃^i: with P[k][l] =
/// ⟨e_k, f_l⟩, the weights are f̃^i = Σ_l P^{-1}[l][i] f_l and, on the
/// other leg, ẽ^l = Σ_k P^{-1}[l][k] e_k.
fn pairing_inverse(p: &DualPair) -> Result<Matrix> {
    linalg::invert(&p.pairing).ok_or_else(|| {
        Error::ConsistencyFailure("pairing matrix is singular".into())
    })
}

fn dual_function_basis(p: &DualPair, pinv: &Matrix, i: usize) -> Element {
    Element {
        algebra_id: p.functions.id.clone(),
        coords: (0..p.functions.dim).map(|l| pinv[l][i].clone()).collect(),
    }
}

fn dual_point_basis(p: &DualPair, pinv: &Matrix, l: usize) -> Element {
    Element {
        algebra_id: p.points.id.clone(),
        coords: pinv[l].clone(),
    }
}

/// Radford–Larson trace integral. A-side: ⟨u⟩ = Σ_i ⟨S²(e_i), f^i·u⟩,
/// normalized so that ⟨1_A⟩ = dim(H). H-side: the same formula with the
/// roles of the factors exchanged, scaled by 1/dim so that the identity
/// of a group algebra integrates to 1.
pub fn trace_integral(p: &DualPair, side: Factor, u: &Element) -> Result<RatFunc> {
    let pinv = pairing_inverse(p)?;
    let mut acc = RatFunc::zero();
    match side {
        Factor::A => {
            for i in 0..p.points.dim {
                let s2 = p.points.antipode_elem(&p.points.basis_element(i), 2)?;
                let fu = p
                    .functions
                    .mul_elem(&dual_function_basis(p, &pinv, i), u)?;
                acc = &acc + &p.pair_eval(&s2, &fu)?;
            }
            Ok(acc)
        }
        Factor::H => {
            for l in 0..p.functions.dim {
                let eu = p.points.mul_elem(&dual_point_basis(p, &pinv, l), u)?;
                let s2 = p
                    .functions
                    .antipode_elem(&p.functions.basis_element(l), 2)?;
                acc = &acc + &p.pair_eval(&eu, &s2)?;
            }
            acc.div(&RatFunc::from_int(p.points.dim as i64))
        }
    }
}

/// Modified trace T(a) = Σ_n f^n ⟨e_n S²(e_i), f^i a⟩, an A-valued
/// right-invariant integral that is never identically zero.
pub fn modified_trace(p: &DualPair, a: &Element) -> Result<Element> {
    let (na, nh) = (p.functions.dim, p.points.dim);
    let pinv = pairing_inverse(p)?;
    let mut out = zero_vector(na);
    for n in 0..nh {
        let en = p.points.basis_element(n);
        let mut weight = RatFunc::zero();
        for i in 0..nh {
            let s2 = p.points.antipode_elem(&p.points.basis_element(i), 2)?;
            let left = p.points.mul_elem(&en, &s2)?;
            let right = p.functions.mul_elem(&dual_function_basis(p, &pinv, i), a)?;
            weight = &weight + &p.pair_eval(&left, &right)?;
        }
        if !weight.is_zero() {
            let fn_tilde = dual_function_basis(p, &pinv, n);
            for (l, c) in fn_tilde.coords.iter().enumerate() {
                out[l] = &out[l] + &(c * &weight);
            }
        }
    }
    p.functions.element(out)
}

/// Rescales a spanning vector so its last nonzero coordinate is 1.
fn normalize_direction(alg: &crate::hopf::HopfAlgebraData, v: &[RatFunc]) -> Result<Element> {
    let k = v
        .iter()
        .rposition(|c| !c.is_zero())
        .ok_or(Error::DegenerateImage(0))?;
    let inv = v[k].inv()?;
    alg.element(v.iter().map(|c| c * &inv).collect())
}

/// The right delta function δ^R_A: the one-dimensional image direction of
/// the modified trace, with its last nonzero coordinate scaled to 1.
pub fn normalize_delta(p: &DualPair) -> Result<Element> {
    let rows: Vec<Vec<RatFunc>> = (0..p.functions.dim)
        .map(|i| Ok(modified_trace(p, &p.functions.basis_element(i))?.coords))
        .collect::<Result<_>>()?;
    let rank = linalg::rank(&rows);
    if rank != 1 {
        return Err(Error::DegenerateImage(rank));
    }
    let dir = rows.iter().find(|r| r.iter().any(|c| !c.is_zero())).unwrap();
    normalize_direction(&p.functions, dir)
}

/// Closed-form E = S^{-1}(f^i)·e_i, already normal-ordered.
fn closed_form_e(p: &DualPair, smash_id: &str) -> Result<SmashElement> {
    let (na, nh) = (p.functions.dim, p.points.dim);
    let pinv = pairing_inverse(p)?;
    let sinv = linalg::invert(&p.functions.antipode).ok_or(Error::SingularAntipode)?;
    let mut coeff = crate::hopf::zero_matrix(na, nh);
    for i in 0..nh {
        let ft = dual_function_basis(p, &pinv, i);
        for (l, c) in ft.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for u in 0..na {
                if !sinv[l][u].is_zero() {
                    coeff[u][i] = &coeff[u][i] + &(c * &sinv[l][u]);
                }
            }
        }
    }
    Ok(SmashElement {
        smash_id: smash_id.to_string(),
        coeff,
    })
}

/// Left-multiplies the closed-form E by the A element `t` (pure A-side
/// arithmetic: both factors are already normal-ordered with trivial H
/// part on the left).
fn a_times_e(p: &DualPair, t: &Element, smash_id: &str) -> Result<SmashElement> {
    let e = closed_form_e(p, smash_id)?;
    let na = p.functions.dim;
    let nh = p.points.dim;
    let mut coeff = crate::hopf::zero_matrix(na, nh);
    for j in 0..nh {
        let col: Vec<RatFunc> = (0..na).map(|u| e.coeff[u][j].clone()).collect();
        let prod = p.functions.mul_coords(&t.coords, &col);
        for (u, c) in prod.into_iter().enumerate() {
            coeff[u][j] = c;
        }
    }
    Ok(SmashElement {
        smash_id: smash_id.to_string(),
        coeff,
    })
}

/// Invariant integral on A via the modified trace: T(a) = I(a)·δ^R_A.
/// The left integral is I_L = I ∘ S^{-1}, which reproduces the standard
/// left-invariance law and the expected sign on the worked examples.
pub fn invariant_integral(p: &DualPair, a: &Element, side: Invariance) -> Result<IntegralResult> {
    let delta = normalize_delta(p)?;
    let (arg, convention) = match side {
        Invariance::Right => (a.clone(), "right; delta last-coordinate 1; I(delta) = 1"),
        Invariance::Left => (
            p.functions.antipode_elem(a, -1)?,
            "left; I_L = I∘S^{-1} of the right integral",
        ),
    };
    let t = modified_trace(p, &arg)?;
    let value = proportionality(&t.coords, &delta.coords).ok_or_else(|| {
        Error::ConsistencyFailure("modified trace is not proportional to delta".into())
    })?;
    let smash_id = format!("{}><{}", p.functions.id, p.points.id);
    let realization = a_times_e(p, &t, &smash_id)?;
    Ok(IntegralResult {
        value,
        delta,
        realization,
        convention: convention.to_string(),
    })
}

/// Solves the defining linear conditions of one projector. `left_factor`
/// lists the basis elements that multiply from the left (with their
/// counit weights), `right_factor` those from the right.
fn solve_projector(
    s: &SmashAlgebra,
    left: Factor,
    right: Factor,
) -> Result<SmashElement> {
    let (na, nh) = s.dims();
    let ns = na * nh;
    // Columns of the linear maps c ↦ g·c − ε(g)c and c ↦ c·g − ε(g)c,
    // stacked for every basis g of the two factors.
    let mut rows: Vec<Vec<RatFunc>> = Vec::new();
    let mut push_conditions = |which: Factor, from_left: bool| -> Result<()> {
        let (alg_dim, counit) = match which {
            Factor::A => (na, &s.a.counit),
            Factor::H => (nh, &s.h.counit),
        };
        for g in 0..alg_dim {
            let gelem = match which {
                Factor::A => s.embed(Factor::A, &s.a.basis_element(g))?,
                Factor::H => s.embed(Factor::H, &s.h.basis_element(g))?,
            };
            // image of each flat basis vector under the condition map
            let mut cols = Vec::with_capacity(ns);
            for i in 0..na {
                for j in 0..nh {
                    let b = s.monomial(i, j);
                    let prod = if from_left {
                        s.mul(&gelem, &b)?
                    } else {
                        s.mul(&b, &gelem)?
                    };
                    let mut col = flatten(&prod.coeff);
                    col[i * nh + j] = &col[i * nh + j] - &counit[g];
                    cols.push(col);
                }
            }
            for w in 0..ns {
                rows.push((0..ns).map(|v| cols[v][w].clone()).collect());
            }
        }
        Ok(())
    };
    push_conditions(left, true)?;
    push_conditions(right, false)?;

    let null = linalg::nullspace(&rows, ns);
    if null.len() != 1 {
        return Err(Error::DegenerateSolutionSpace(null.len()));
    }
    let mut cand = s.zero();
    for i in 0..na {
        for j in 0..nh {
            cand.coeff[i][j] = null[0][i * nh + j].clone();
        }
    }
    // idempotent rescale: cand² = λ·cand, divide by λ
    let sq = s.mul(&cand, &cand)?;
    let lambda = proportionality(&flatten(&sq.coeff), &flatten(&cand.coeff)).ok_or_else(
        || Error::ConsistencyFailure("projector candidate square not proportional".into()),
    )?;
    if lambda.is_zero() {
        return Err(Error::NilpotentCandidate);
    }
    Ok(cand.scale(&lambda.inv()?))
}

/// Solves for the vacuum projectors E (x·E = ε(x)E, E·a = ε(a)E) and Ē
/// (a·Ē = ε(a)Ē, Ē·x = ε(x)Ē), each rescaled to an idempotent. For an
/// unbraided smash the result is cross-checked against the closed forms
/// E = S^{-1}(f^i)·e_i and Ē = S²(e_i)·f^i.
pub fn solve_vacuum_projectors(s: &SmashAlgebra) -> Result<ProjectorPair> {
    let e = solve_projector(s, Factor::H, Factor::A)?;
    let ebar = solve_projector(s, Factor::A, Factor::H)?;

    if s.unbraided {
        let pair = DualPair::assemble_unchecked(s.a.clone(), s.h.clone(), s.pairing.clone())?;
        let e_closed = closed_form_e(&pair, &s.id)?;
        if e != e_closed {
            return Err(Error::ClosedFormMismatch(format!(
                "E solver/closed-form disagreement in `{}`",
                s.id
            )));
        }
        // Ē = S²(e_i)·f̃^i, normal-ordered through the product table.
        let pinv = pairing_inverse(&pair)?;
        let mut ebar_closed = s.zero();
        for i in 0..s.h.dim {
            let s2 = s.h.antipode_elem(&s.h.basis_element(i), 2)?;
            let term = s.mul(
                &s.embed(Factor::H, &s2)?,
                &s.embed(Factor::A, &dual_function_basis(&pair, &pinv, i))?,
            )?;
            ebar_closed = ebar_closed.add(&term);
        }
        if ebar != ebar_closed {
            return Err(Error::ClosedFormMismatch(format!(
                "Ē solver/closed-form disagreement in `{}`",
                s.id
            )));
        }
    }
    Ok(ProjectorPair { e, ebar })
}

/// δ^R_A extracted inside the smash algebra: Ē·a·E = t_a·E with t_a ∈ A,
/// and the t_a span a line whose normalized direction is δ. This route
/// needs no pairing conventions and works verbatim in the braided case.
pub fn vacuum_delta(s: &SmashAlgebra, proj: &ProjectorPair) -> Result<Element> {
    let (na, nh) = s.dims();
    let ns = na * nh;
    // matrix of the map t ↦ embed(t)·E on the flat smash basis
    let mut m = vec![vec![RatFunc::zero(); na]; ns];
    for c in 0..na {
        let col = s.mul(&s.embed(Factor::A, &s.a.basis_element(c))?, &proj.e)?;
        for (w, val) in flatten(&col.coeff).into_iter().enumerate() {
            m[w][c] = val;
        }
    }
    let mut rows = Vec::with_capacity(na);
    for i in 0..na {
        let r = s.mul(
            &s.mul(&proj.ebar, &s.embed(Factor::A, &s.a.basis_element(i))?)?,
            &proj.e,
        )?;
        let t = linalg::solve_any(&m, &flatten(&r.coeff)).ok_or_else(|| {
            Error::ConsistencyFailure(format!(
                "Ē·f^{i}·E is not of the form t·E in `{}`",
                s.id
            ))
        })?;
        rows.push(t);
    }
    let rank = linalg::rank(&rows);
    if rank != 1 {
        return Err(Error::DegenerateSolutionSpace(rank));
    }
    let dir = rows.iter().find(|r| r.iter().any(|c| !c.is_zero())).unwrap();
    normalize_direction(&s.a, dir)
}

/// Vacuum-expectation integral on A: Ē·a·E = value · (Ē·δ·E), so that
/// value(δ^R_A) = 1.
#[allow(non_snake_case)]
pub fn vacuum_integral_A(
    s: &SmashAlgebra,
    proj: &ProjectorPair,
    a: &Element,
) -> Result<IntegralResult> {
    let delta = vacuum_delta(s, proj)?;
    let k = s.mul(
        &s.mul(&proj.ebar, &s.embed(Factor::A, &delta)?)?,
        &proj.e,
    )?;
    if k.is_zero() {
        return Err(Error::ConsistencyFailure(
            "realization of |Ω_A⟩⟨Ω_A| vanishes".into(),
        ));
    }
    let realization = s.mul(&s.mul(&proj.ebar, &s.embed(Factor::A, a)?)?, &proj.e)?;
    let value = proportionality(&flatten(&realization.coeff), &flatten(&k.coeff))
        .ok_or(Error::DegenerateSolutionSpace(2))?;
    Ok(IntegralResult {
        value,
        delta,
        realization,
        convention: "right; value(delta) = 1".into(),
    })
}

/// Vacuum-expectation (left) integral on H: E·z·Ē, with the scalar fixed
/// by ⟨z⟩ = ⟨z, δ^R_A⟩; proportionality is verified on the whole basis.
#[allow(non_snake_case)]
pub fn vacuum_integral_H(
    s: &SmashAlgebra,
    proj: &ProjectorPair,
    z: &Element,
) -> Result<IntegralResult> {
    let delta = vacuum_delta(s, proj)?;
    let pair_delta = |z: &Element| -> RatFunc {
        let mut acc = RatFunc::zero();
        for (j, zj) in z.coords.iter().enumerate() {
            if zj.is_zero() {
                continue;
            }
            for (i, di) in delta.coords.iter().enumerate() {
                if !di.is_zero() && !s.pairing[j][i].is_zero() {
                    acc = &acc + &(&(zj * di) * &s.pairing[j][i]);
                }
            }
        }
        acc
    };
    let realize = |z: &Element| -> Result<SmashElement> {
        s.mul(&s.mul(&proj.e, &s.embed(Factor::H, z)?)?, &proj.ebar)
    };
    // Fix the common realization K of |Ω_U⟩⟨Ω_U| from the first basis
    // element with nonzero pairing against δ, then verify ⟨z⟩ ∝ ⟨z, δ⟩
    // across the basis.
    let mut k: Option<SmashElement> = None;
    for j in 0..s.h.dim {
        let zj = s.h.basis_element(j);
        let v = pair_delta(&zj);
        let r = realize(&zj)?;
        match (&k, v.is_zero()) {
            (None, false) => {
                let kn = r.scale(&v.inv()?);
                k = Some(kn);
            }
            (_, true) => {
                if !r.is_zero() {
                    return Err(Error::ConsistencyFailure(format!(
                        "E·e_{j}·Ē ≠ 0 although ⟨e_{j}, δ⟩ = 0"
                    )));
                }
            }
            _ => {}
        }
    }
    let k = k.ok_or(Error::DegenerateSolutionSpace(0))?;
    for j in 0..s.h.dim {
        let zj = s.h.basis_element(j);
        let expected = k.scale(&pair_delta(&zj));
        if realize(&zj)? != expected {
            return Err(Error::ConsistencyFailure(format!(
                "E·e_{j}·Ē is not ⟨e_{j}, δ⟩·K"
            )));
        }
    }
    let realization = realize(z)?;
    Ok(IntegralResult {
        value: pair_delta(z),
        delta,
        realization,
        convention: "H-left; value(z) = ⟨z, δ^R_A⟩".into(),
    })
}

/// Θ[i][l] = ⟨e_i S²(e_k), f^k f^l⟩ (summed over k); never identically
/// zero for a valid pair.
pub fn theta_matrix(p: &DualPair) -> Result<Matrix> {
    let (na, nh) = (p.functions.dim, p.points.dim);
    let pinv = pairing_inverse(p)?;
    let mut theta = crate::hopf::zero_matrix(nh, na);
    for i in 0..nh {
        for l in 0..na {
            for kk in 0..nh {
                let s2 = p.points.antipode_elem(&p.points.basis_element(kk), 2)?;
                let left = p.points.mul_elem(&p.points.basis_element(i), &s2)?;
                let right = p
                    .functions
                    .mul_elem(&dual_function_basis(p, &pinv, kk), &p.functions.basis_element(l))?;
                theta[i][l] = &theta[i][l] + &p.pair_eval(&left, &right)?;
            }
        }
    }
    if theta.iter().flatten().all(|c| c.is_zero()) {
        return Err(Error::AllZeroTheta);
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{dualize, dualize_with_labels};
    use crate::smash::{build_smash, build_smash_custom};
    use crate::testdata;

    fn dqs_pair() -> DualPair {
        dualize_with_labels(
            &testdata::dqs(),
            "dqs*".into(),
            ["1", "a", "b", "a*b"].iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    fn fermionic_smash() -> SmashAlgebra {
        let (a, h, cross) = testdata::fermionic_line_parts();
        build_smash_custom(a, h, cross).unwrap()
    }

    #[test]
    fn dqs_trace_integral_vanishes() {
        let p = dqs_pair();
        for k in 0..4 {
            let v = trace_integral(&p, Factor::A, &p.functions.basis_element(k)).unwrap();
            assert!(v.is_zero(), "f^{k}");
        }
    }

    #[test]
    fn cyclic_trace_integrals() {
        for n in 2..=6 {
            let p = dualize(&testdata::cyclic_group(n)).unwrap();
            let total = trace_integral(&p, Factor::A, &p.functions.unit_element()).unwrap();
            assert_eq!(total, RatFunc::from_int(n as i64));
            for i in 0..n {
                let v = trace_integral(&p, Factor::H, &p.points.basis_element(i)).unwrap();
                let expected = if i == 0 {
                    RatFunc::one()
                } else {
                    RatFunc::zero()
                };
                assert_eq!(v, expected, "n = {n}, e_{i}");
            }
        }
    }

    #[test]
    fn dqs_modified_trace() {
        let p = dqs_pair();
        let a = &p.functions;
        let t = |i: usize| modified_trace(&p, &a.basis_element(i)).unwrap();
        assert!(t(0).coords.iter().all(|c| c.is_zero()));
        assert_eq!(
            t(1).coords,
            crate::hopf::scale_coords(&a.basis_element(3).coords, &RatFunc::from_int(-1))
        );
        assert!(t(2).coords.iter().all(|c| c.is_zero()));
        assert_eq!(t(3).coords, a.basis_element(3).coords);
    }

    #[test]
    fn dqs_delta_and_integrals() {
        let p = dqs_pair();
        let delta = normalize_delta(&p).unwrap();
        assert_eq!(delta.coords, p.functions.basis_element(3).coords); // ab
        let expected = [0i64, -1, 0, 1];
        for (i, want) in expected.iter().enumerate() {
            let r =
                invariant_integral(&p, &p.functions.basis_element(i), Invariance::Right).unwrap();
            assert_eq!(r.value, RatFunc::from_int(*want), "I(f^{i})");
        }
        // realization of Ē·a·E is -ab(1-2y): -ab⊗1 + 2ab⊗y
        let r = invariant_integral(&p, &p.functions.basis_element(1), Invariance::Right).unwrap();
        let mut want = crate::hopf::zero_matrix(4, 4);
        want[3][0] = RatFunc::from_int(-1);
        want[3][2] = RatFunc::from_int(2);
        assert_eq!(r.realization.coeff, want);
        // left integrals: only I_L(ab) = -1
        let expected_left = [0i64, 0, 0, -1];
        for (i, want) in expected_left.iter().enumerate() {
            let r =
                invariant_integral(&p, &p.functions.basis_element(i), Invariance::Left).unwrap();
            assert_eq!(r.value, RatFunc::from_int(*want), "I_L(f^{i})");
        }
    }

    #[test]
    fn dqs_projectors_match_closed_forms() {
        let p = dqs_pair();
        let s = build_smash(&p).unwrap();
        let proj = solve_vacuum_projectors(&s).unwrap();
        // E = 1 - ax(1-2y) + by - abx(1-y)
        let mut e = crate::hopf::zero_matrix(4, 4);
        e[0][0] = RatFunc::one();
        e[1][1] = RatFunc::from_int(-1);
        e[1][3] = RatFunc::from_int(2);
        e[2][2] = RatFunc::one();
        e[3][1] = RatFunc::from_int(-1);
        e[3][3] = RatFunc::one();
        assert_eq!(proj.e.coeff, e);
        // Ē = 1 - xa + yb - xyab, normal-ordered through the cross relations
        let x = s.embed(Factor::H, &s.h.basis_element(1)).unwrap();
        let y = s.embed(Factor::H, &s.h.basis_element(2)).unwrap();
        let xy = s.embed(Factor::H, &s.h.basis_element(3)).unwrap();
        let a = s.embed(Factor::A, &s.a.basis_element(1)).unwrap();
        let b = s.embed(Factor::A, &s.a.basis_element(2)).unwrap();
        let ab = s.embed(Factor::A, &s.a.basis_element(3)).unwrap();
        let ebar = s
            .one()
            .sub(&s.mul(&x, &a).unwrap())
            .add(&s.mul(&y, &b).unwrap())
            .sub(&s.mul(&xy, &ab).unwrap());
        assert_eq!(proj.ebar, ebar);
        // projector conditions and idempotency
        for i in 0..4 {
            let fa = s.embed(Factor::A, &s.a.basis_element(i)).unwrap();
            let eh = s.embed(Factor::H, &s.h.basis_element(i)).unwrap();
            let eps_a = &s.a.counit[i];
            let eps_h = &s.h.counit[i];
            assert_eq!(s.mul(&proj.e, &fa).unwrap(), proj.e.scale(eps_a));
            assert_eq!(s.mul(&eh, &proj.e).unwrap(), proj.e.scale(eps_h));
            assert_eq!(s.mul(&fa, &proj.ebar).unwrap(), proj.ebar.scale(eps_a));
            assert_eq!(s.mul(&proj.ebar, &eh).unwrap(), proj.ebar.scale(eps_h));
        }
        assert_eq!(s.mul(&proj.e, &proj.e).unwrap(), proj.e);
        assert_eq!(s.mul(&proj.ebar, &proj.ebar).unwrap(), proj.ebar);
    }

    #[test]
    fn dqs_vacuum_integrals_agree_with_trace_route() {
        let p = dqs_pair();
        let s = build_smash(&p).unwrap();
        let proj = solve_vacuum_projectors(&s).unwrap();
        for i in 0..4 {
            let a = p.functions.basis_element(i);
            let via_trace = invariant_integral(&p, &a, Invariance::Right).unwrap();
            let via_vacuum = vacuum_integral_A(&s, &proj, &a).unwrap();
            assert_eq!(via_trace.value, via_vacuum.value, "f^{i}");
            assert_eq!(via_trace.delta, via_vacuum.delta);
            assert_eq!(via_trace.realization, via_vacuum.realization);
        }
    }

    #[test]
    fn dqs_h_side_integral() {
        let p = dqs_pair();
        let s = build_smash(&p).unwrap();
        let proj = solve_vacuum_projectors(&s).unwrap();
        // E·xy·Ē = -(1+b)x(1-y) = -x + xy - bx + bxy, value 1
        let r = vacuum_integral_H(&s, &proj, &s.h.basis_element(3)).unwrap();
        assert!(r.value.is_one());
        let mut want = crate::hopf::zero_matrix(4, 4);
        want[0][1] = RatFunc::from_int(-1);
        want[0][3] = RatFunc::one();
        want[2][1] = RatFunc::from_int(-1);
        want[2][3] = RatFunc::one();
        assert_eq!(r.realization.coeff, want);
        for j in 0..3 {
            let r = vacuum_integral_H(&s, &proj, &s.h.basis_element(j)).unwrap();
            assert!(r.value.is_zero(), "e_{j}");
            assert!(r.realization.is_zero(), "e_{j}");
        }
    }

    #[test]
    fn fermionic_line_integrals() {
        let s = fermionic_smash();
        let proj = solve_vacuum_projectors(&s).unwrap();
        // E = σξ = 1 - ξσ, Ē = ξσ
        let mut e = crate::hopf::zero_matrix(2, 2);
        e[0][0] = RatFunc::one();
        e[1][1] = RatFunc::from_int(-1);
        assert_eq!(proj.e.coeff, e);
        let mut ebar = crate::hopf::zero_matrix(2, 2);
        ebar[1][1] = RatFunc::one();
        assert_eq!(proj.ebar.coeff, ebar);
        // Ē·E = 0
        assert!(s.mul(&proj.ebar, &proj.e).unwrap().is_zero());
        // δ = ξ, I(ξ) = 1 (Berezin), I(1) = 0
        let r1 = vacuum_integral_A(&s, &proj, &s.a.basis_element(1)).unwrap();
        assert!(r1.value.is_one());
        assert_eq!(r1.delta.coords, s.a.basis_element(1).coords);
        // Ē·ξ·E = ξ
        assert_eq!(
            r1.realization,
            s.embed(Factor::A, &s.a.basis_element(1)).unwrap()
        );
        let r0 = vacuum_integral_A(&s, &proj, &s.a.basis_element(0)).unwrap();
        assert!(r0.value.is_zero());
        // H side: E·σ·Ē nonzero, E·1·Ē = 0
        let rs = vacuum_integral_H(&s, &proj, &s.h.basis_element(1)).unwrap();
        assert!(rs.value.is_one());
        assert!(!rs.realization.is_zero());
        let r = vacuum_integral_H(&s, &proj, &s.h.basis_element(0)).unwrap();
        assert!(r.value.is_zero());
    }

    #[test]
    fn cyclic_integrals_and_delta() {
        let p = dualize(&testdata::cyclic_group(2)).unwrap();
        let delta = normalize_delta(&p).unwrap();
        // modified trace sends every f^l to f^0: delta is the function
        // supported at the identity
        assert_eq!(delta.coords, p.functions.basis_element(0).coords);
        let mut values = Vec::new();
        for i in 0..2 {
            let r =
                invariant_integral(&p, &p.functions.basis_element(i), Invariance::Right).unwrap();
            values.push(r.value);
        }
        // translation invariance: all basis integrals coincide
        assert_eq!(values[0], values[1]);
        assert!(values[0].is_one());
    }

    #[test]
    fn invariance_laws_hold() {
        for h in [testdata::cyclic_group(3), testdata::dqs()] {
            let p = dualize(&h).unwrap();
            let a_alg = &p.functions;
            let n = a_alg.dim;
            let ints: Vec<RatFunc> = (0..n)
                .map(|i| {
                    invariant_integral(&p, &a_alg.basis_element(i), Invariance::Right)
                        .unwrap()
                        .value
                })
                .collect();
            let ints_l: Vec<RatFunc> = (0..n)
                .map(|i| {
                    invariant_integral(&p, &a_alg.basis_element(i), Invariance::Left)
                        .unwrap()
                        .value
                })
                .collect();
            for i in 0..n {
                // Σ I(a_(1)) a_(2) = I(a) 1  and  Σ a_(1) I_L(a_(2)) = I_L(a) 1
                let mut right = zero_vector(n);
                let mut left = zero_vector(n);
                for j in 0..n {
                    for k in 0..n {
                        let d = &a_alg.comult[i][j][k];
                        if d.is_zero() {
                            continue;
                        }
                        right[k] = &right[k] + &(d * &ints[j]);
                        left[j] = &left[j] + &(d * &ints_l[k]);
                    }
                }
                let want_r: Vec<RatFunc> =
                    a_alg.unit.iter().map(|u| u * &ints[i]).collect();
                let want_l: Vec<RatFunc> =
                    a_alg.unit.iter().map(|u| u * &ints_l[i]).collect();
                assert_eq!(right, want_r, "{}: rint f^{i}", h.id);
                assert_eq!(left, want_l, "{}: lint f^{i}", h.id);
                // derivative annihilation: I(x ▷ a) = ε(x) I(a)
                for j in 0..p.points.dim {
                    let x = p.points.basis_element(j);
                    let xa = p.act_left(&x, &a_alg.basis_element(i)).unwrap();
                    let lhs: RatFunc = xa
                        .coords
                        .iter()
                        .zip(&ints)
                        .fold(RatFunc::zero(), |acc, (c, v)| &acc + &(c * v));
                    assert_eq!(lhs, &p.points.counit[j] * &ints[i]);
                }
            }
        }
    }

    #[test]
    fn theta_is_nonzero() {
        for h in [testdata::cyclic_group(2), testdata::dqs()] {
            let p = dualize(&h).unwrap();
            assert!(theta_matrix(&p).is_ok(), "{}", h.id);
        }
    }
}
