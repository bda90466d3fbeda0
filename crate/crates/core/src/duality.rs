//! Dual pairs of Hopf algebras: the functions algebra A, the points
//! algebra H, the pairing between them, and the induced actions.

use crate::error::{Error, Result};
use crate::hopf::{zero_vector, AxiomReport, Element, HopfAlgebraData, Matrix};
use crate::linalg;
use crate::scalars::RatFunc;

/// A functions algebra `A` and points algebra `H` with a nondegenerate
/// pairing `P[i][j] = ⟨b^H_i, b^A_j⟩`.
#[derive(Debug, Clone)]
pub struct DualPair {
    pub functions: HopfAlgebraData,
    pub points: HopfAlgebraData,
    pub pairing: Matrix,
}

impl DualPair {
    /// Builds a pair from user-supplied data, validating the pairing
    /// compatibility invariants over all basis triples.
    pub fn new(functions: HopfAlgebraData, points: HopfAlgebraData, pairing: Matrix) -> Result<Self> {
        let pair = DualPair {
            functions,
            points,
            pairing,
        };
        pair.check_pairing().into_result()?;
        Ok(pair)
    }

    /// Assembly without the compatibility gate; used by the braided layer
    /// where the duality convention differs.
    pub fn assemble_unchecked(
        functions: HopfAlgebraData,
        points: HopfAlgebraData,
        pairing: Matrix,
    ) -> Result<Self> {
        if pairing.len() != points.dim || pairing.iter().any(|r| r.len() != functions.dim) {
            return Err(Error::ShapeMismatch("pairing matrix shape".into()));
        }
        if linalg::invert(&pairing).is_none() {
            return Err(Error::AxiomViolation {
                name: "pairing-nondegenerate".into(),
                witness: "pairing matrix is singular".into(),
            });
        }
        Ok(DualPair {
            functions,
            points,
            pairing,
        })
    }

    pub fn check_pairing(&self) -> AxiomReport {
        let mut report = AxiomReport::default();
        let na = self.functions.dim;
        let nh = self.points.dim;
        let p = &self.pairing;

        if p.len() != nh || p.iter().any(|r| r.len() != na) {
            report.push("pairing-shape", Some("pairing matrix shape".into()));
            return report;
        }
        report.push(
            "pairing-nondegenerate",
            if linalg::invert(p).is_some() {
                None
            } else {
                Some("pairing matrix is singular".into())
            },
        );

        // ⟨h, ab⟩ = ⟨h_(1), a⟩⟨h_(2), b⟩
        let mut w = None;
        'outer1: for k in 0..nh {
            for i in 0..na {
                for j in 0..na {
                    let lhs = (0..na).fold(RatFunc::zero(), |acc, m| {
                        &acc + &(&self.functions.mult[i][j][m] * &p[k][m])
                    });
                    let mut rhs = RatFunc::zero();
                    for s in 0..nh {
                        for t in 0..nh {
                            let d = &self.points.comult[k][s][t];
                            if !d.is_zero() {
                                rhs = &rhs + &(&(d * &p[s][i]) * &p[t][j]);
                            }
                        }
                    }
                    if lhs != rhs {
                        w = Some(format!("⟨e_{k}, f_{i} f_{j}⟩"));
                        break 'outer1;
                    }
                }
            }
        }
        report.push("product-coproduct-duality-A", w);

        // ⟨hg, a⟩ = ⟨h⊗g, a_(1)⊗a_(2)⟩
        let mut w = None;
        'outer2: for k in 0..nh {
            for l in 0..nh {
                for i in 0..na {
                    let lhs = (0..nh).fold(RatFunc::zero(), |acc, m| {
                        &acc + &(&self.points.mult[k][l][m] * &p[m][i])
                    });
                    let mut rhs = RatFunc::zero();
                    for r in 0..na {
                        for t in 0..na {
                            let d = &self.functions.comult[i][r][t];
                            if !d.is_zero() {
                                rhs = &rhs + &(&(d * &p[k][r]) * &p[l][t]);
                            }
                        }
                    }
                    if lhs != rhs {
                        w = Some(format!("⟨e_{k} e_{l}, f_{i}⟩"));
                        break 'outer2;
                    }
                }
            }
        }
        report.push("product-coproduct-duality-H", w);

        // ⟨S(h), a⟩ = ⟨h, S(a)⟩
        let mut w = None;
        'outer3: for k in 0..nh {
            for i in 0..na {
                let lhs = (0..nh).fold(RatFunc::zero(), |acc, m| {
                    &acc + &(&self.points.antipode[k][m] * &p[m][i])
                });
                let rhs = (0..na).fold(RatFunc::zero(), |acc, m| {
                    &acc + &(&self.functions.antipode[i][m] * &p[k][m])
                });
                if lhs != rhs {
                    w = Some(format!("⟨S(e_{k}), f_{i}⟩"));
                    break 'outer3;
                }
            }
        }
        report.push("antipode-self-duality", w);

        // ⟨1_H, a⟩ = ε_A(a) and ⟨h, 1_A⟩ = ε_H(h)
        let mut w = None;
        for i in 0..na {
            let lhs = (0..nh).fold(RatFunc::zero(), |acc, k| {
                &acc + &(&self.points.unit[k] * &p[k][i])
            });
            if lhs != self.functions.counit[i] {
                w = Some(format!("⟨1_H, f_{i}⟩"));
                break;
            }
        }
        if w.is_none() {
            for k in 0..nh {
                let lhs = (0..na).fold(RatFunc::zero(), |acc, i| {
                    &acc + &(&p[k][i] * &self.functions.unit[i])
                });
                if lhs != self.points.counit[k] {
                    w = Some(format!("⟨e_{k}, 1_A⟩"));
                    break;
                }
            }
        }
        report.push("unit-counit-duality", w);

        report
    }

    /// `⟨h, a⟩` for h in the points algebra, a in the functions algebra.
    pub fn pair_eval(&self, h: &Element, a: &Element) -> Result<RatFunc> {
        if h.algebra_id != self.points.id || a.algebra_id != self.functions.id {
            return Err(Error::AlgebraMismatch(format!(
                "pair_eval over ({}, {})",
                h.algebra_id, a.algebra_id
            )));
        }
        let mut acc = RatFunc::zero();
        for (k, hk) in h.coords.iter().enumerate() {
            if hk.is_zero() {
                continue;
            }
            for (i, ai) in a.coords.iter().enumerate() {
                if !ai.is_zero() && !self.pairing[k][i].is_zero() {
                    acc = &acc + &(&(hk * ai) * &self.pairing[k][i]);
                }
            }
        }
        Ok(acc)
    }

    /// Left action of points on functions: `x ▷ a = a_(1) ⟨x, a_(2)⟩`.
    pub fn act_left(&self, x: &Element, a: &Element) -> Result<Element> {
        if x.algebra_id != self.points.id || a.algebra_id != self.functions.id {
            return Err(Error::AlgebraMismatch("act_left".into()));
        }
        let na = self.functions.dim;
        let mut out = zero_vector(na);
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for r in 0..na {
                for t in 0..na {
                    let d = &self.functions.comult[i][r][t];
                    if d.is_zero() {
                        continue;
                    }
                    let mut paired = RatFunc::zero();
                    for (p, xp) in x.coords.iter().enumerate() {
                        if !xp.is_zero() && !self.pairing[p][t].is_zero() {
                            paired = &paired + &(xp * &self.pairing[p][t]);
                        }
                    }
                    if !paired.is_zero() {
                        out[r] = &out[r] + &(&(ai * d) * &paired);
                    }
                }
            }
        }
        self.functions.element(out)
    }

    /// Right action of functions on points: `x ◁ a = ⟨x_(1), a⟩ x_(2)`.
    pub fn act_right(&self, x: &Element, a: &Element) -> Result<Element> {
        if x.algebra_id != self.points.id || a.algebra_id != self.functions.id {
            return Err(Error::AlgebraMismatch("act_right".into()));
        }
        let nh = self.points.dim;
        let mut out = zero_vector(nh);
        for (p, xp) in x.coords.iter().enumerate() {
            if xp.is_zero() {
                continue;
            }
            for r in 0..nh {
                for s in 0..nh {
                    let d = &self.points.comult[p][r][s];
                    if d.is_zero() {
                        continue;
                    }
                    let mut paired = RatFunc::zero();
                    for (i, ai) in a.coords.iter().enumerate() {
                        if !ai.is_zero() && !self.pairing[r][i].is_zero() {
                            paired = &paired + &(ai * &self.pairing[r][i]);
                        }
                    }
                    if !paired.is_zero() {
                        out[s] = &out[s] + &(&(xp * d) * &paired);
                    }
                }
            }
        }
        self.points.element(out)
    }
}

/// Constructs the dual Hopf algebra of `h` by transposing the structure
/// tensors, and returns the pair with the identity pairing.
pub fn dualize(h: &HopfAlgebraData) -> Result<DualPair> {
    let labels: Vec<String> = (0..h.dim).map(|i| format!("f{i}")).collect();
    dualize_with_labels(h, format!("{}^*", h.id), labels)
}

pub fn dualize_with_labels(
    h: &HopfAlgebraData,
    dual_id: String,
    labels: Vec<String>,
) -> Result<DualPair> {
    h.check_axioms().into_result()?;
    let n = h.dim;
    if labels.len() != n {
        return Err(Error::ShapeMismatch("dual label count".into()));
    }
    let mut mult = crate::hopf::zero_tensor3(n);
    let mut comult = crate::hopf::zero_tensor3(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                mult[i][j][k] = h.comult[k][i][j].clone();
                comult[k][i][j] = h.mult[i][j][k].clone();
            }
        }
    }
    let dual = HopfAlgebraData::build(
        dual_id,
        labels,
        mult,
        h.counit.clone(),
        comult,
        h.unit.clone(),
        linalg::transpose(&h.antipode),
    )?;
    DualPair::new(dual, h.clone(), linalg::identity(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata;

    #[test]
    fn z2_pair_invariants_hold() {
        let h = testdata::cyclic_group(2);
        let pair = dualize(&h).unwrap();
        assert!(pair.check_pairing().all_pass());
    }

    #[test]
    fn dualize_cyclic_gives_delta_functions() {
        let h = testdata::cyclic_group(3);
        let pair = dualize(&h).unwrap();
        let a = &pair.functions;
        // f^i f^j = 0 for i != j, (f^i)^2 = f^i
        for i in 0..3 {
            for j in 0..3 {
                let prod = a
                    .mul_elem(&a.basis_element(i), &a.basis_element(j))
                    .unwrap();
                let expected = if i == j {
                    a.basis_element(i)
                } else {
                    a.zero_element()
                };
                assert_eq!(prod, expected);
            }
        }
        // unit of the dual is Σ_i f^i
        assert!(a.unit.iter().all(|c| c.is_one()));
    }

    #[test]
    fn dualize_is_involutive() {
        for h in [testdata::cyclic_group(2), testdata::dqs()] {
            let pair = dualize(&h).unwrap();
            let back = dualize(&pair.functions).unwrap();
            assert_eq!(back.functions.mult, h.mult);
            assert_eq!(back.functions.comult, h.comult);
            assert_eq!(back.functions.counit, h.counit);
            assert_eq!(back.functions.unit, h.unit);
            assert_eq!(back.functions.antipode, h.antipode);
        }
    }

    #[test]
    fn dqs_dual_relations() {
        // a^2 = 0, b^2 = -2b, ba = -ab - 2a, Δ(a) = a⊗1 + 1⊗a + b⊗a
        let pair = dualize(&testdata::dqs()).unwrap();
        let a_alg = &pair.functions;
        let (one, a, b, ab) = (
            a_alg.basis_element(0),
            a_alg.basis_element(1),
            a_alg.basis_element(2),
            a_alg.basis_element(3),
        );
        assert_eq!(a_alg.mul_elem(&a, &a).unwrap(), a_alg.zero_element());
        let b2 = a_alg.mul_elem(&b, &b).unwrap();
        assert_eq!(
            b2.coords,
            crate::hopf::scale_coords(&b.coords, &RatFunc::from_int(-2))
        );
        let ba = a_alg.mul_elem(&b, &a).unwrap();
        let expected = crate::hopf::add_coords(
            &crate::hopf::scale_coords(&ab.coords, &RatFunc::from_int(-1)),
            &crate::hopf::scale_coords(&a.coords, &RatFunc::from_int(-2)),
        );
        assert_eq!(ba.coords, expected);
        assert_eq!(a_alg.mul_elem(&a, &b).unwrap(), ab);
        // Δ(a) = a⊗1 + 1⊗a + b⊗a
        let d = a_alg.coproduct_elem(&a).unwrap();
        let mut expected = crate::hopf::zero_matrix(4, 4);
        expected[1][0] = RatFunc::one();
        expected[0][1] = RatFunc::one();
        expected[2][1] = RatFunc::one();
        assert_eq!(d.coeff, expected);
        // S(a) = a + ab
        let sa = a_alg.antipode_elem(&a, 1).unwrap();
        assert_eq!(
            sa.coords,
            crate::hopf::add_coords(&a.coords, &ab.coords)
        );
        drop(one);
    }

    #[test]
    fn dqs_pairing_examples() {
        let pair = dualize(&testdata::dqs()).unwrap();
        let h = &pair.points;
        let a_alg = &pair.functions;
        let x = h.basis_element(1);
        let a = a_alg.basis_element(1);
        assert!(pair.pair_eval(&x, &a).unwrap().is_one());
        // ⟨x, 1_A⟩ = ε(x) = 0
        assert!(pair
            .pair_eval(&x, &a_alg.unit_element())
            .unwrap()
            .is_zero());
        // ⟨S(x), a⟩ = ⟨x, S(a)⟩ = 1
        let sx = h.antipode_elem(&x, 1).unwrap();
        let sa = a_alg.antipode_elem(&a, 1).unwrap();
        assert!(pair.pair_eval(&sx, &a).unwrap().is_one());
        assert!(pair.pair_eval(&x, &sa).unwrap().is_one());
    }

    #[test]
    fn dqs_actions() {
        let pair = dualize(&testdata::dqs()).unwrap();
        let h = &pair.points;
        let a_alg = &pair.functions;
        let x = h.basis_element(1);
        let y = h.basis_element(2);
        let a = a_alg.basis_element(1);
        let b = a_alg.basis_element(2);
        // x ▷ a = 1 + b
        let xa = pair.act_left(&x, &a).unwrap();
        assert_eq!(
            xa.coords,
            crate::hopf::add_coords(
                &a_alg.basis_element(0).coords,
                &a_alg.basis_element(2).coords
            )
        );
        // 1_H ▷ a = a
        assert_eq!(pair.act_left(&h.unit_element(), &a).unwrap(), a);
        // x ◁ 1_A = x;  x ◁ a = 1_H;  y ◁ b = 1_H - 2y
        assert_eq!(pair.act_right(&x, &a_alg.unit_element()).unwrap(), x);
        assert_eq!(pair.act_right(&x, &a).unwrap(), h.basis_element(0));
        let yb = pair.act_right(&y, &b).unwrap();
        let expected = crate::hopf::add_coords(
            &h.basis_element(0).coords,
            &crate::hopf::scale_coords(&y.coords, &RatFunc::from_int(-2)),
        );
        assert_eq!(yb.coords, expected);
    }

    #[test]
    fn action_axioms_exhaustive() {
        for h in [testdata::cyclic_group(3), testdata::dqs()] {
            let pair = dualize(&h).unwrap();
            let nh = pair.points.dim;
            let na = pair.functions.dim;
            for p in 0..nh {
                for r in 0..nh {
                    let x = pair.points.basis_element(p);
                    let y = pair.points.basis_element(r);
                    let xy = pair.points.mul_elem(&x, &y).unwrap();
                    for i in 0..na {
                        let a = pair.functions.basis_element(i);
                        // (xy) ▷ a = x ▷ (y ▷ a)
                        let lhs = pair.act_left(&xy, &a).unwrap();
                        let rhs = pair
                            .act_left(&x, &pair.act_left(&y, &a).unwrap())
                            .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            // module-algebra law: x ▷ (ab) = (x_(1) ▷ a)(x_(2) ▷ b)
            for p in 0..nh {
                let x = pair.points.basis_element(p);
                let dx = pair.points.coproduct_elem(&x).unwrap();
                for i in 0..na {
                    for j in 0..na {
                        let a = pair.functions.basis_element(i);
                        let b = pair.functions.basis_element(j);
                        let ab = pair.functions.mul_elem(&a, &b).unwrap();
                        let lhs = pair.act_left(&x, &ab).unwrap();
                        let mut rhs = pair.functions.zero_element();
                        for s in 0..nh {
                            for t in 0..nh {
                                let c = &dx.coeff[s][t];
                                if c.is_zero() {
                                    continue;
                                }
                                let u = pair
                                    .act_left(&pair.points.basis_element(s), &a)
                                    .unwrap();
                                let v = pair
                                    .act_left(&pair.points.basis_element(t), &b)
                                    .unwrap();
                                let uv = pair.functions.mul_elem(&u, &v).unwrap();
                                rhs.coords = crate::hopf::add_coords(
                                    &rhs.coords,
                                    &crate::hopf::scale_coords(&uv.coords, c),
                                );
                            }
                        }
                        assert_eq!(lhs, rhs);
                        // right action: x ◁ (ab) = (x ◁ a) ◁ b
                        let l = pair.act_right(&x, &ab).unwrap();
                        let r = pair
                            .act_right(&pair.act_right(&x, &a).unwrap(), &b)
                            .unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }
}
