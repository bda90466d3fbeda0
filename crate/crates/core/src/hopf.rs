//! Structure-constant representation of a finite-dimensional Hopf algebra,
//! element arithmetic, and the machine-checkable axiom suite.

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalars::RatFunc;

pub type Vector = Vec<RatFunc>;
pub type Matrix = Vec<Vec<RatFunc>>;
/// Rank-3 structure tensor, indexed `[i][j][k]`.
pub type Tensor3 = Vec<Vec<Vec<RatFunc>>>;

pub fn zero_vector(n: usize) -> Vector {
    vec![RatFunc::zero(); n]
}

pub fn zero_matrix(n: usize, m: usize) -> Matrix {
    vec![vec![RatFunc::zero(); m]; n]
}

pub fn zero_tensor3(n: usize) -> Tensor3 {
    vec![vec![vec![RatFunc::zero(); n]; n]; n]
}

/// A finite-dimensional (co)algebra datum:
///   b_i b_j = Σ_k mult[i][j][k] b_k
///   Δ(b_i)  = Σ_{j,k} comult[i][j][k] b_j ⊗ b_k
///   S(b_i)  = Σ_j antipode[i][j] b_j
#[derive(Debug, Clone)]
pub struct HopfAlgebraData {
    pub id: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub mult: Tensor3,
    pub unit: Vector,
    pub comult: Tensor3,
    pub counit: Vector,
    pub antipode: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub algebra_id: String,
    pub coords: Vector,
}

/// Coefficient matrix over b_j ⊗ b_k.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorSquare {
    pub algebra_id: String,
    pub coeff: Matrix,
}

#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn push(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(AxiomCheck {
            name: name.to_string(),
            pass: witness.is_none(),
            witness,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn into_result(self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(f) => Err(Error::AxiomViolation {
                name: f.name.clone(),
                witness: f.witness.clone().unwrap_or_default(),
            }),
        }
    }
}

impl HopfAlgebraData {
    /// Validates shapes and the full unbraided axiom suite; rejects on failure.
    pub fn build(
        id: impl Into<String>,
        labels: Vec<String>,
        mult: Tensor3,
        unit: Vector,
        comult: Tensor3,
        counit: Vector,
        antipode: Matrix,
    ) -> Result<Self> {
        let h = Self::assemble(id, labels, mult, unit, comult, counit, antipode)?;
        h.check_axioms().into_result()?;
        Ok(h)
    }

    /// Shape-checked assembly without the axiom gate. Used by the braided
    /// layer, whose bialgebra and antihomomorphism laws differ.
    pub fn assemble(
        id: impl Into<String>,
        labels: Vec<String>,
        mult: Tensor3,
        unit: Vector,
        comult: Tensor3,
        counit: Vector,
        antipode: Matrix,
    ) -> Result<Self> {
        let dim = labels.len();
        let t3_ok = |t: &Tensor3| {
            t.len() == dim && t.iter().all(|m| {
                m.len() == dim && m.iter().all(|r| r.len() == dim)
            })
        };
        if dim == 0
            || !t3_ok(&mult)
            || !t3_ok(&comult)
            || unit.len() != dim
            || counit.len() != dim
            || antipode.len() != dim
            || antipode.iter().any(|r| r.len() != dim)
        {
            return Err(Error::ShapeMismatch(format!(
                "tensors do not match dimension {dim}"
            )));
        }
        Ok(HopfAlgebraData {
            id: id.into(),
            dim,
            labels,
            mult,
            unit,
            comult,
            counit,
            antipode,
        })
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut coords = zero_vector(self.dim);
        coords[i] = RatFunc::one();
        Element {
            algebra_id: self.id.clone(),
            coords,
        }
    }

    pub fn zero_element(&self) -> Element {
        Element {
            algebra_id: self.id.clone(),
            coords: zero_vector(self.dim),
        }
    }

    pub fn unit_element(&self) -> Element {
        Element {
            algebra_id: self.id.clone(),
            coords: self.unit.clone(),
        }
    }

    pub fn element(&self, coords: Vector) -> Result<Element> {
        if coords.len() != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "coordinate length {} for dimension {}",
                coords.len(),
                self.dim
            )));
        }
        Ok(Element {
            algebra_id: self.id.clone(),
            coords,
        })
    }

    fn owns(&self, u: &Element) -> Result<()> {
        if u.algebra_id != self.id || u.coords.len() != self.dim {
            return Err(Error::AlgebraMismatch(format!(
                "element of `{}` used in `{}`",
                u.algebra_id, self.id
            )));
        }
        Ok(())
    }

    /// Product of coordinate vectors by contraction against the mult tensor.
    pub fn mul_coords(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (k, m) in self.mult[i][j].iter().enumerate() {
                    if !m.is_zero() {
                        out[k] = &out[k] + &(&c * m);
                    }
                }
            }
        }
        out
    }

    pub fn mul_elem(&self, u: &Element, v: &Element) -> Result<Element> {
        self.owns(u)?;
        self.owns(v)?;
        Ok(Element {
            algebra_id: self.id.clone(),
            coords: self.mul_coords(&u.coords, &v.coords),
        })
    }

    pub fn coproduct_coords(&self, u: &Vector) -> Matrix {
        let mut out = zero_matrix(self.dim, self.dim);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let d = &self.comult[i][j][k];
                    if !d.is_zero() {
                        out[j][k] = &out[j][k] + &(ui * d);
                    }
                }
            }
        }
        out
    }

    pub fn coproduct_elem(&self, u: &Element) -> Result<TensorSquare> {
        self.owns(u)?;
        Ok(TensorSquare {
            algebra_id: self.id.clone(),
            coeff: self.coproduct_coords(&u.coords),
        })
    }

    pub fn counit_elem(&self, u: &Element) -> Result<RatFunc> {
        self.owns(u)?;
        Ok(u.coords
            .iter()
            .zip(&self.counit)
            .fold(RatFunc::zero(), |acc, (c, e)| &acc + &(c * e)))
    }

    pub fn antipode_matrix_inverse(&self) -> Result<Matrix> {
        linalg::invert(&self.antipode).ok_or(Error::SingularAntipode)
    }

    /// Applies S (or S^{-1} for negative powers) `|power|` times.
    pub fn antipode_elem(&self, u: &Element, power: i32) -> Result<Element> {
        self.owns(u)?;
        assert!(power != 0, "antipode power must be nonzero");
        let m = if power > 0 {
            self.antipode.clone()
        } else {
            self.antipode_matrix_inverse()?
        };
        // coords transform by the transpose: (S u)_j = Σ_i u_i S[i][j]
        let mt = linalg::transpose(&m);
        let mut coords = u.coords.clone();
        for _ in 0..power.unsigned_abs() {
            coords = linalg::mat_vec(&mt, &coords);
        }
        Ok(Element {
            algebra_id: self.id.clone(),
            coords,
        })
    }

    pub fn render_element(&self, u: &Element) -> String {
        render_linear(&u.coords, &self.labels)
    }

    /// The full unbraided axiom suite as exact tensor identities.
    pub fn check_axioms(&self) -> AxiomReport {
        let mut report = self.check_axioms_common();
        report.push("bialgebra-coproduct-multiplicative", self.witness_bialgebra());
        report.push("antipode-antihomomorphism", self.witness_antihom());
        report
    }

    /// The checks shared with the braided suite (everything except the two
    /// laws whose braided form involves Ψ).
    pub fn check_axioms_common(&self) -> AxiomReport {
        let mut report = AxiomReport::default();
        report.push("unit-law", self.witness_unit_law());
        report.push("associativity", self.witness_associativity());
        report.push("coassociativity", self.witness_coassociativity());
        report.push("counit-law", self.witness_counit_law());
        report.push("counit-multiplicative", self.witness_counit_mult());
        report.push("unit-grouplike", self.witness_unit_grouplike());
        report.push("antipode-law", self.witness_antipode_law());
        report.push(
            "antipode-invertible",
            if linalg::invert(&self.antipode).is_some() {
                None
            } else {
                Some("S matrix is singular".into())
            },
        );
        report
    }

    fn witness_unit_law(&self) -> Option<String> {
        for i in 0..self.dim {
            let e = self.basis_element(i).coords;
            if self.mul_coords(&self.unit, &e) != e {
                return Some(format!("1*b_{i}"));
            }
            if self.mul_coords(&e, &self.unit) != e {
                return Some(format!("b_{i}*1"));
            }
        }
        None
    }

    fn witness_associativity(&self) -> Option<String> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs = (0..n).fold(RatFunc::zero(), |acc, m| {
                            &acc + &(&self.mult[i][j][m] * &self.mult[m][k][l])
                        });
                        let rhs = (0..n).fold(RatFunc::zero(), |acc, m| {
                            &acc + &(&self.mult[j][k][m] * &self.mult[i][m][l])
                        });
                        if lhs != rhs {
                            return Some(format!("(b_{i} b_{j}) b_{k} at b_{l}"));
                        }
                    }
                }
            }
        }
        None
    }

    fn witness_coassociativity(&self) -> Option<String> {
        let n = self.dim;
        for i in 0..n {
            for a in 0..n {
                for b in 0..n {
                    for k in 0..n {
                        let lhs = (0..n).fold(RatFunc::zero(), |acc, m| {
                            &acc + &(&self.comult[i][m][k] * &self.comult[m][a][b])
                        });
                        let rhs = (0..n).fold(RatFunc::zero(), |acc, m| {
                            &acc + &(&self.comult[i][a][m] * &self.comult[m][b][k])
                        });
                        if lhs != rhs {
                            return Some(format!("Δ(b_{i}) at b_{a}⊗b_{b}⊗b_{k}"));
                        }
                    }
                }
            }
        }
        None
    }

    fn witness_counit_law(&self) -> Option<String> {
        let n = self.dim;
        for i in 0..n {
            for k in 0..n {
                let left = (0..n).fold(RatFunc::zero(), |acc, j| {
                    &acc + &(&self.comult[i][j][k] * &self.counit[j])
                });
                let right = (0..n).fold(RatFunc::zero(), |acc, j| {
                    &acc + &(&self.comult[i][k][j] * &self.counit[j])
                });
                let delta = if i == k {
                    RatFunc::one()
                } else {
                    RatFunc::zero()
                };
                if left != delta {
                    return Some(format!("(ε⊗id)Δ(b_{i}) at b_{k}"));
                }
                if right != delta {
                    return Some(format!("(id⊗ε)Δ(b_{i}) at b_{k}"));
                }
            }
        }
        None
    }

    fn witness_counit_mult(&self) -> Option<String> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let lhs = (0..n).fold(RatFunc::zero(), |acc, k| {
                    &acc + &(&self.mult[i][j][k] * &self.counit[k])
                });
                if lhs != &self.counit[i] * &self.counit[j] {
                    return Some(format!("ε(b_{i} b_{j})"));
                }
            }
        }
        None
    }

    fn witness_unit_grouplike(&self) -> Option<String> {
        // Δ(1) = 1⊗1 and ε(1) = 1
        let d = self.coproduct_coords(&self.unit);
        for j in 0..self.dim {
            for k in 0..self.dim {
                if d[j][k] != &self.unit[j] * &self.unit[k] {
                    return Some(format!("Δ(1) at b_{j}⊗b_{k}"));
                }
            }
        }
        let eps = self
            .unit
            .iter()
            .zip(&self.counit)
            .fold(RatFunc::zero(), |acc, (u, e)| &acc + &(u * e));
        if !eps.is_one() {
            return Some("ε(1) ≠ 1".into());
        }
        None
    }

    fn witness_antipode_law(&self) -> Option<String> {
        // m(S⊗id)Δ(b_i) = ε(b_i) 1 = m(id⊗S)Δ(b_i)
        for i in 0..self.dim {
            let mut left = zero_vector(self.dim);
            let mut right = zero_vector(self.dim);
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let d = &self.comult[i][j][k];
                    if d.is_zero() {
                        continue;
                    }
                    for a in 0..self.dim {
                        let sj = &self.antipode[j][a];
                        if !sj.is_zero() {
                            for l in 0..self.dim {
                                let m = &self.mult[a][k][l];
                                if !m.is_zero() {
                                    left[l] = &left[l] + &(&(d * sj) * m);
                                }
                            }
                        }
                        let sk = &self.antipode[k][a];
                        if !sk.is_zero() {
                            for l in 0..self.dim {
                                let m = &self.mult[j][a][l];
                                if !m.is_zero() {
                                    right[l] = &right[l] + &(&(d * sk) * m);
                                }
                            }
                        }
                    }
                }
            }
            let expected: Vector = self.unit.iter().map(|u| u * &self.counit[i]).collect();
            if left != expected {
                return Some(format!("m(S⊗id)Δ(b_{i})"));
            }
            if right != expected {
                return Some(format!("m(id⊗S)Δ(b_{i})"));
            }
        }
        None
    }

    fn witness_bialgebra(&self) -> Option<String> {
        // Δ(b_i b_j) = Δ(b_i) Δ(b_j) with the componentwise product in H⊗H
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let mut rhs = zero_matrix(n, n);
                for p in 0..n {
                    for r in 0..n {
                        let di = &self.comult[i][p][r];
                        if di.is_zero() {
                            continue;
                        }
                        for s in 0..n {
                            for t in 0..n {
                                let dj = &self.comult[j][s][t];
                                if dj.is_zero() {
                                    continue;
                                }
                                let c = di * dj;
                                for a in 0..n {
                                    let m1 = &self.mult[p][s][a];
                                    if m1.is_zero() {
                                        continue;
                                    }
                                    for b in 0..n {
                                        let m2 = &self.mult[r][t][b];
                                        if !m2.is_zero() {
                                            rhs[a][b] = &rhs[a][b] + &(&(&c * m1) * m2);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                let mut lhs = zero_matrix(n, n);
                for k in 0..n {
                    let m = &self.mult[i][j][k];
                    if m.is_zero() {
                        continue;
                    }
                    for a in 0..n {
                        for b in 0..n {
                            let d = &self.comult[k][a][b];
                            if !d.is_zero() {
                                lhs[a][b] = &lhs[a][b] + &(m * d);
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return Some(format!("Δ(b_{i} b_{j})"));
                }
            }
        }
        None
    }

    fn witness_antihom(&self) -> Option<String> {
        // S(b_i b_j) = S(b_j) S(b_i)
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let mut lhs = zero_vector(n);
                for k in 0..n {
                    let m = &self.mult[i][j][k];
                    if m.is_zero() {
                        continue;
                    }
                    for l in 0..n {
                        if !self.antipode[k][l].is_zero() {
                            lhs[l] = &lhs[l] + &(m * &self.antipode[k][l]);
                        }
                    }
                }
                let si = &self.antipode[i];
                let sj = &self.antipode[j];
                let rhs = self.mul_coords(sj, si);
                if lhs != rhs {
                    return Some(format!("S(b_{i} b_{j})"));
                }
            }
        }
        None
    }
}

pub fn add_coords(a: &[RatFunc], b: &[RatFunc]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_coords(a: &[RatFunc], c: &RatFunc) -> Vector {
    a.iter().map(|x| x * c).collect()
}

/// Renders a linear combination over the given labels; the unit label
/// prints as `1` and coefficient 1 is suppressed.
pub fn render_linear(coords: &[RatFunc], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in coords.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let (sign, mag) = {
            let neg = -c;
            // prefer a leading "-" when the coefficient is the negative of
            // something that renders without one
            let s = c.to_string();
            if let Some(stripped) = s.strip_prefix('-') {
                if !stripped.contains(" - ") && !stripped.contains(" + ") {
                    ("-", neg.to_string())
                } else {
                    ("+", s)
                }
            } else {
                ("+", s)
            }
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
        }
        let coeff_is_unit = mag == "1";
        let needs_parens = mag.contains(' ') || mag.contains('+');
        if label == "1" {
            if needs_parens {
                out.push_str(&format!("({mag})"));
            } else {
                out.push_str(&mag);
            }
        } else if coeff_is_unit {
            out.push_str(label);
        } else if needs_parens {
            out.push_str(&format!("({mag})*{label}"));
        } else {
            out.push_str(&format!("{mag}*{label}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
