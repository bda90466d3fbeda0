//! Compiles a parsed presentation into validated structure-constant data:
//! products of basis words are normalized with the relation rules, the
//! coproduct/counit/antipode are extended from the generators by (braided)
//! (anti)multiplicativity, and the full axiom suite gates the result.

use super::{word_label, AlgebraAst, PresentationAst, Relation, Word};
use crate::braided::{check_braided_axioms, BraidedHopfData, BraidingTensor};
use crate::duality::DualPair;
use crate::error::{Error, Result};
use crate::hopf::{
    zero_matrix, zero_tensor3, zero_vector, HopfAlgebraData, Matrix, Tensor3, Vector,
};
use crate::scalars::RatFunc;
use crate::smash::{build_smash_custom, SmashAlgebra, Tensor4};
use std::collections::HashMap;

/// Rewrite-step budget per normalized product.
pub const REWRITE_BUDGET: usize = 10_000;

/// Everything a presentation can compile to. `hopf` is always present;
/// the companions appear when the corresponding blocks do.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub hopf: HopfAlgebraData,
    pub braided: Option<BraidedHopfData>,
    pub dual: Option<HopfAlgebraData>,
    pub dual_braided: Option<BraidedHopfData>,
    pub pair: Option<DualPair>,
    pub smash: Option<SmashAlgebra>,
    pub warnings: Vec<String>,
}

struct Rewriter<'a> {
    relations: &'a [Relation],
    index: HashMap<Word, usize>,
    dim: usize,
    gens: &'a [String],
}

impl Rewriter<'_> {
    /// Normalizes a word to basis coordinates by repeatedly applying the
    /// first matching relation; `rightmost` flips the scan direction (used
    /// only by the confluence surrogate check).
    fn reduce(&self, word: &[usize], rightmost: bool) -> Result<Vector> {
        let mut coords = zero_vector(self.dim);
        let mut work: Vec<(RatFunc, Word)> = vec![(RatFunc::one(), word.to_vec())];
        let mut budget = REWRITE_BUDGET;
        while let Some((c, w)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            if let Some(&i) = self.index.get(&w) {
                coords[i] = &coords[i] + &c;
                continue;
            }
            let positions: Vec<usize> = if rightmost {
                (0..w.len()).rev().collect()
            } else {
                (0..w.len()).collect()
            };
            let mut applied = false;
            'scan: for start in positions {
                for rel in self.relations {
                    if w.len() - start >= rel.lhs.len()
                        && w[start..start + rel.lhs.len()] == rel.lhs[..]
                    {
                        for t in &rel.rhs {
                            let mut nw = w[..start].to_vec();
                            nw.extend_from_slice(&t.word);
                            nw.extend_from_slice(&w[start + rel.lhs.len()..]);
                            work.push((&c * &t.coeff, nw));
                        }
                        applied = true;
                        break 'scan;
                    }
                }
            }
            if !applied {
                return Err(Error::BasisEscape(word_label(&w, self.gens)));
            }
            budget -= 1;
            if budget == 0 {
                return Err(Error::NonTerminatingRewrite {
                    word: word_label(word, self.gens),
                    budget: REWRITE_BUDGET,
                });
            }
        }
        Ok(coords)
    }
}

fn mul_coords(mult: &Tensor3, a: &[RatFunc], b: &[RatFunc]) -> Vector {
    let n = mult.len();
    let mut out = zero_vector(n);
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            for k in 0..n {
                let m = &mult[i][j][k];
                if !m.is_zero() {
                    out[k] = &out[k] + &(&(ca * cb) * m);
                }
            }
        }
    }
    out
}

struct FactorParts {
    data: HopfAlgebraData,
    psi: Option<Tensor4>,
    warnings: Vec<String>,
    rewriter_index: HashMap<Word, usize>,
}

fn compile_algebra(ast: &AlgebraAst) -> Result<FactorParts> {
    let dim = ast.basis.len();
    let mut index: HashMap<Word, usize> = HashMap::new();
    for (i, w) in ast.basis.iter().enumerate() {
        if index.insert(w.clone(), i).is_some() {
            return Err(Error::ConsistencyFailure(format!(
                "duplicate basis word `{}` in `{}`",
                word_label(w, &ast.generators),
                ast.name
            )));
        }
    }
    for rel in &ast.relations {
        if index.contains_key(&rel.lhs) {
            return Err(Error::ConsistencyFailure(format!(
                "relation left-hand side `{}` is a basis word",
                word_label(&rel.lhs, &ast.generators)
            )));
        }
        // RHS words may themselves need rewriting; a self-referential rule
        // is caught by the step budget, not up front.
    }
    let rw = Rewriter {
        relations: &ast.relations,
        index: index.clone(),
        dim,
        gens: &ast.generators,
    };

    let mut warnings = Vec::new();
    let mut mult = zero_tensor3(dim);
    let mut confluence_flagged = false;
    for i in 0..dim {
        for j in 0..dim {
            let mut w = ast.basis[i].clone();
            w.extend_from_slice(&ast.basis[j]);
            let row = rw.reduce(&w, false)?;
            if !confluence_flagged {
                let alt = rw.reduce(&w, true)?;
                if alt != row {
                    warnings.push(format!(
                        "ConfluenceWarning: `{}` normalizes differently left-to-right \
                         and right-to-left in `{}`",
                        word_label(&w, &ast.generators),
                        ast.name
                    ));
                    confluence_flagged = true;
                }
            }
            mult[i][j] = row;
        }
    }

    let labels: Vec<String> = ast
        .basis
        .iter()
        .map(|w| word_label(w, &ast.generators))
        .collect();
    let mut unit = zero_vector(dim);
    unit[0] = RatFunc::one();
    let counit: Vector = ast
        .basis
        .iter()
        .map(|w| {
            w.iter()
                .fold(RatFunc::one(), |acc, &g| &acc * &ast.counit[g])
        })
        .collect();

    // index of the single-generator basis word, needed wherever the
    // extension recursions bottom out on generators
    let gen_index = |g: usize| -> Result<usize> {
        index.get(&vec![g]).copied().ok_or_else(|| {
            Error::ConsistencyFailure(format!(
                "generator `{}` is not a basis word",
                ast.generators[g]
            ))
        })
    };

    // braiding extension by functoriality (word peeling on both legs)
    let psi: Option<Tensor4> = match &ast.braiding {
        None => None,
        Some(table) => {
            let ng = ast.generators.len();
            let mut rule: Vec<Vec<Option<Matrix>>> = vec![vec![None; ng]; ng];
            for (i, row) in table.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    if let Some(terms) = cell {
                        let mut m = zero_matrix(dim, dim);
                        for t in terms {
                            let l = rw.reduce(&t.left, false)?;
                            let r = rw.reduce(&t.right, false)?;
                            for (a, la) in l.iter().enumerate() {
                                if la.is_zero() {
                                    continue;
                                }
                                for (b, rb) in r.iter().enumerate() {
                                    if !rb.is_zero() {
                                        m[a][b] = &m[a][b] + &(&(la * rb) * &t.coeff);
                                    }
                                }
                            }
                        }
                        rule[i][j] = Some(m);
                    }
                }
            }
            let mut memo: HashMap<(usize, usize), Option<Matrix>> = HashMap::new();
            let mut full = vec![vec![Vec::new(); dim]; dim];
            for u in 0..dim {
                for v in 0..dim {
                    full[u][v] = psi_pair(
                        u, v, ast, &rule, &mult, &rw, &gen_index, &mut memo,
                    )?;
                }
            }
            Some(full)
        }
    };

    // antipode by (braided) antimultiplicative extension, shortest words
    // first so every recursive value is already available
    let mut s_rows: Vec<Option<Vector>> = vec![None; dim];
    s_rows[0] = Some(unit.clone());
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by_key(|&i| ast.basis[i].len());
    for &i in &order {
        let w = &ast.basis[i];
        if w.is_empty() {
            continue;
        }
        if w.len() == 1 {
            let mut row = zero_vector(dim);
            for t in &ast.antipode[w[0]] {
                let r = rw.reduce(&t.word, false)?;
                for k in 0..dim {
                    row[k] = &row[k] + &(&r[k] * &t.coeff);
                }
            }
            s_rows[i] = Some(row);
            continue;
        }
        let g = gen_index(w[0])?;
        let tail = rw.reduce(&w[1..], false)?;
        let take = |rows: &[Option<Vector>], k: usize| -> Result<Vector> {
            rows[k].clone().ok_or_else(|| {
                Error::ConsistencyFailure(format!(
                    "antipode extension needs S(`{}`) before `{}`",
                    labels[k], labels[i]
                ))
            })
        };
        let mut row = zero_vector(dim);
        match &psi {
            None => {
                // S(g·u) = S(u)·S(g)
                let mut s_tail = zero_vector(dim);
                for (a, c) in tail.iter().enumerate() {
                    if !c.is_zero() {
                        let sa = take(&s_rows, a)?;
                        for k in 0..dim {
                            s_tail[k] = &s_tail[k] + &(&sa[k] * c);
                        }
                    }
                }
                let sg = take(&s_rows, g)?;
                row = mul_coords(&mult, &s_tail, &sg);
            }
            Some(psi) => {
                // S(g·u) = m(S⊗S)Ψ(g⊗u)
                for (v, cv) in tail.iter().enumerate() {
                    if cv.is_zero() {
                        continue;
                    }
                    for a in 0..dim {
                        for b in 0..dim {
                            let p = &psi[g][v][a][b];
                            if p.is_zero() {
                                continue;
                            }
                            let prod =
                                mul_coords(&mult, &take(&s_rows, a)?, &take(&s_rows, b)?);
                            for k in 0..dim {
                                row[k] = &row[k] + &(&(cv * p) * &prod[k]);
                            }
                        }
                    }
                }
            }
        }
        s_rows[i] = Some(row);
    }
    let antipode: Matrix = s_rows
        .into_iter()
        .map(|r| r.expect("all basis indices visited"))
        .collect();

    // coproduct by (braided) multiplicative extension
    let mut gen_delta: Vec<Matrix> = Vec::with_capacity(ast.generators.len());
    for terms in &ast.coproduct {
        let mut m = zero_matrix(dim, dim);
        for t in terms {
            let l = rw.reduce(&t.left, false)?;
            let r = rw.reduce(&t.right, false)?;
            for (a, la) in l.iter().enumerate() {
                if la.is_zero() {
                    continue;
                }
                for (b, rb) in r.iter().enumerate() {
                    if !rb.is_zero() {
                        m[a][b] = &m[a][b] + &(&(la * rb) * &t.coeff);
                    }
                }
            }
        }
        gen_delta.push(m);
    }
    let square_mul = |u: &Matrix, v: &Matrix| -> Matrix {
        let mut out = zero_matrix(dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                if u[a][b].is_zero() {
                    continue;
                }
                for c in 0..dim {
                    for d in 0..dim {
                        if v[c][d].is_zero() {
                            continue;
                        }
                        let uv = &u[a][b] * &v[c][d];
                        match &psi {
                            None => {
                                for w1 in 0..dim {
                                    let m1 = &mult[a][c][w1];
                                    if m1.is_zero() {
                                        continue;
                                    }
                                    for w2 in 0..dim {
                                        let m2 = &mult[b][d][w2];
                                        if !m2.is_zero() {
                                            out[w1][w2] =
                                                &out[w1][w2] + &(&(&uv * m1) * m2);
                                        }
                                    }
                                }
                            }
                            Some(psi) => {
                                for p in 0..dim {
                                    for r in 0..dim {
                                        let f = &psi[b][c][p][r];
                                        if f.is_zero() {
                                            continue;
                                        }
                                        for w1 in 0..dim {
                                            let m1 = &mult[a][p][w1];
                                            if m1.is_zero() {
                                                continue;
                                            }
                                            for w2 in 0..dim {
                                                let m2 = &mult[r][d][w2];
                                                if !m2.is_zero() {
                                                    out[w1][w2] = &out[w1][w2]
                                                        + &(&(&(&uv * f) * m1) * m2);
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    };
    let mut comult = zero_tensor3(dim);
    for i in 0..dim {
        let mut acc = zero_matrix(dim, dim);
        acc[0][0] = RatFunc::one();
        for &g in &ast.basis[i] {
            acc = square_mul(&acc, &gen_delta[g]);
        }
        comult[i] = acc;
    }

    let data = if psi.is_some() {
        HopfAlgebraData::assemble(
            ast.name.clone(),
            labels,
            mult,
            unit,
            comult,
            counit,
            antipode,
        )?
    } else {
        HopfAlgebraData::build(
            ast.name.clone(),
            labels,
            mult,
            unit,
            comult,
            counit,
            antipode,
        )?
    };
    Ok(FactorParts {
        data,
        psi,
        warnings,
        rewriter_index: index,
    })
}

/// Ψ on a pair of basis indices, extended from the generator rules by
/// peeling one generator at a time. A cycle in the recursion means the
/// braiding does not respect the word grading.
#[allow(clippy::too_many_arguments)]
fn psi_pair(
    u: usize,
    v: usize,
    ast: &AlgebraAst,
    rule: &[Vec<Option<Matrix>>],
    mult: &Tensor3,
    rw: &Rewriter,
    gen_index: &dyn Fn(usize) -> Result<usize>,
    memo: &mut HashMap<(usize, usize), Option<Matrix>>,
) -> Result<Matrix> {
    match memo.get(&(u, v)) {
        Some(Some(m)) => return Ok(m.clone()),
        Some(None) => {
            return Err(Error::ConsistencyFailure(format!(
                "braiding extension cycles on ({}, {})",
                word_label(&ast.basis[u], &ast.generators),
                word_label(&ast.basis[v], &ast.generators)
            )))
        }
        None => {}
    }
    memo.insert((u, v), None);
    let dim = mult.len();
    let mut out = zero_matrix(dim, dim);
    let wu = ast.basis[u].clone();
    let wv = ast.basis[v].clone();
    if wu.is_empty() {
        out[v][0] = RatFunc::one();
    } else if wv.is_empty() {
        out[0][u] = RatFunc::one();
    } else if wu.len() == 1 && wv.len() == 1 {
        out = rule[wu[0]][wv[0]].clone().ok_or_else(|| {
            Error::ConsistencyFailure(format!(
                "missing braiding rule for {}(*){}",
                ast.generators[wu[0]], ast.generators[wv[0]]
            ))
        })?;
    } else if wu.len() == 1 {
        // Ψ(g⊗v'h) = (m⊗id)(id⊗Ψ)(Ψ⊗id)
        let h = gen_index(*wv.last().expect("nonempty"))?;
        let v1 = rw.reduce(&wv[..wv.len() - 1], false)?;
        for (a, ca) in v1.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let m1 = psi_pair(u, a, ast, rule, mult, rw, gen_index, memo)?;
            for b in 0..dim {
                for c in 0..dim {
                    if m1[b][c].is_zero() {
                        continue;
                    }
                    let m2 = psi_pair(c, h, ast, rule, mult, rw, gen_index, memo)?;
                    for d in 0..dim {
                        for e in 0..dim {
                            if m2[d][e].is_zero() {
                                continue;
                            }
                            let f = &(&(ca * &m1[b][c]) * &m2[d][e]);
                            for w in 0..dim {
                                let m = &mult[b][d][w];
                                if !m.is_zero() {
                                    out[w][e] = &out[w][e] + &(f * m);
                                }
                            }
                        }
                    }
                }
            }
        }
    } else {
        // Ψ(gu'⊗v) = (id⊗m)(Ψ⊗id)(id⊗Ψ)
        let g = gen_index(wu[0])?;
        let u1 = rw.reduce(&wu[1..], false)?;
        for (a, ca) in u1.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let m1 = psi_pair(a, v, ast, rule, mult, rw, gen_index, memo)?;
            for b in 0..dim {
                for c in 0..dim {
                    if m1[b][c].is_zero() {
                        continue;
                    }
                    let m2 = psi_pair(g, b, ast, rule, mult, rw, gen_index, memo)?;
                    for d in 0..dim {
                        for e in 0..dim {
                            if m2[d][e].is_zero() {
                                continue;
                            }
                            let f = &(&(ca * &m1[b][c]) * &m2[d][e]);
                            for w in 0..dim {
                                let m = &mult[e][c][w];
                                if !m.is_zero() {
                                    out[d][w] = &out[d][w] + &(f * m);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    memo.insert((u, v), Some(out.clone()));
    Ok(out)
}

/// Cross matrix C with e_j·f^i = Σ C[r][s] f^r e_s, extended from the
/// generator rules by peeling the leading generator on either side.
#[allow(clippy::too_many_arguments)]
fn cross_pair(
    j: usize,
    i: usize,
    a_ast: &AlgebraAst,
    h_ast: &AlgebraAst,
    rule: &[Vec<Option<Matrix>>],
    a_rw: &Rewriter,
    h_rw: &Rewriter,
    mult_a: &Tensor3,
    mult_h: &Tensor3,
    memo: &mut HashMap<(usize, usize), Option<Matrix>>,
) -> Result<Matrix> {
    match memo.get(&(j, i)) {
        Some(Some(m)) => return Ok(m.clone()),
        Some(None) => {
            return Err(Error::ConsistencyFailure(format!(
                "cross extension cycles on e_{j}·f^{i}"
            )))
        }
        None => {}
    }
    memo.insert((j, i), None);
    let (na, nh) = (mult_a.len(), mult_h.len());
    let mut out = zero_matrix(na, nh);
    let wj = h_ast.basis[j].clone();
    let wi = a_ast.basis[i].clone();
    let a_gen_index = |g: usize| -> Result<usize> {
        a_rw.index.get(&vec![g]).copied().ok_or_else(|| {
            Error::ConsistencyFailure(format!(
                "generator `{}` is not a basis word",
                a_ast.generators[g]
            ))
        })
    };
    let h_gen_index = |g: usize| -> Result<usize> {
        h_rw.index.get(&vec![g]).copied().ok_or_else(|| {
            Error::ConsistencyFailure(format!(
                "generator `{}` is not a basis word",
                h_ast.generators[g]
            ))
        })
    };
    if wj.is_empty() {
        out[i][0] = RatFunc::one();
    } else if wi.is_empty() {
        out[0][j] = RatFunc::one();
    } else if wj.len() == 1 && wi.len() == 1 {
        out = rule[wj[0]][wi[0]].clone().ok_or_else(|| {
            Error::ConsistencyFailure(format!(
                "missing cross rule for {}*{}",
                h_ast.generators[wj[0]], a_ast.generators[wi[0]]
            ))
        })?;
    } else if wj.len() == 1 {
        // e_j·(f^g f^rest) = (e_j·f^g)·f^rest
        let g = a_gen_index(wi[0])?;
        let rest = a_rw.reduce(&wi[1..], false)?;
        let m1 = cross_pair(
            j, g, a_ast, h_ast, rule, a_rw, h_rw, mult_a, mult_h, memo,
        )?;
        for r in 0..na {
            for s in 0..nh {
                if m1[r][s].is_zero() {
                    continue;
                }
                for (a, ca) in rest.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    let m2 = cross_pair(
                        s, a, a_ast, h_ast, rule, a_rw, h_rw, mult_a, mult_h, memo,
                    )?;
                    for rp in 0..na {
                        for sp in 0..nh {
                            if m2[rp][sp].is_zero() {
                                continue;
                            }
                            let f = &(&(&m1[r][s] * ca) * &m2[rp][sp]);
                            for w in 0..na {
                                let m = &mult_a[r][rp][w];
                                if !m.is_zero() {
                                    out[w][sp] = &out[w][sp] + &(f * m);
                                }
                            }
                        }
                    }
                }
            }
        }
    } else {
        // (e_h e_rest)·f^i = e_h·(e_rest·f^i)
        let h = h_gen_index(wj[0])?;
        let rest = h_rw.reduce(&wj[1..], false)?;
        for (b, cb) in rest.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            let m1 = cross_pair(
                b, i, a_ast, h_ast, rule, a_rw, h_rw, mult_a, mult_h, memo,
            )?;
            for r in 0..na {
                for s in 0..nh {
                    if m1[r][s].is_zero() {
                        continue;
                    }
                    let m2 = cross_pair(
                        h, r, a_ast, h_ast, rule, a_rw, h_rw, mult_a, mult_h, memo,
                    )?;
                    for rp in 0..na {
                        for sp in 0..nh {
                            if m2[rp][sp].is_zero() {
                                continue;
                            }
                            let f = &(&(cb * &m1[r][s]) * &m2[rp][sp]);
                            for w in 0..nh {
                                let m = &mult_h[sp][s][w];
                                if !m.is_zero() {
                                    out[rp][w] = &out[rp][w] + &(f * m);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    memo.insert((j, i), Some(out.clone()));
    Ok(out)
}

pub fn compile(ast: &PresentationAst) -> Result<Compiled> {
    let a_parts = compile_algebra(&ast.algebra)?;
    let mut warnings = a_parts.warnings.clone();
    let braided = match &a_parts.psi {
        Some(psi) => {
            let b = BraidedHopfData {
                base: a_parts.data.clone(),
                braiding: BraidingTensor { psi: psi.clone() },
            };
            check_braided_axioms(&b).into_result()?;
            Some(b)
        }
        None => None,
    };

    let mut dual = None;
    let mut dual_braided = None;
    let mut smash = None;
    let mut pair = None;

    if let Some(d_ast) = &ast.dual {
        let h_parts = compile_algebra(d_ast)?;
        warnings.extend(h_parts.warnings.clone());
        dual_braided = match &h_parts.psi {
            Some(psi) => {
                let b = BraidedHopfData {
                    base: h_parts.data.clone(),
                    braiding: BraidingTensor { psi: psi.clone() },
                };
                check_braided_axioms(&b).into_result()?;
                Some(b)
            }
            None => None,
        };

        if !ast.cross.is_empty() {
            let (na, nh) = (a_parts.data.dim, h_parts.data.dim);
            let ng_h = d_ast.generators.len();
            let ng_a = ast.algebra.generators.len();
            let a_rw = Rewriter {
                relations: &ast.algebra.relations,
                index: a_parts.rewriter_index.clone(),
                dim: na,
                gens: &ast.algebra.generators,
            };
            let h_rw = Rewriter {
                relations: &d_ast.relations,
                index: h_parts.rewriter_index.clone(),
                dim: nh,
                gens: &d_ast.generators,
            };
            let mut rule: Vec<Vec<Option<Matrix>>> = vec![vec![None; ng_a]; ng_h];
            for cr in &ast.cross {
                let mut m = zero_matrix(na, nh);
                for t in &cr.rhs {
                    let ra = a_rw.reduce(&t.a_word, false)?;
                    let rh = h_rw.reduce(&t.h_word, false)?;
                    for (r, cr_a) in ra.iter().enumerate() {
                        if cr_a.is_zero() {
                            continue;
                        }
                        for (s, cr_h) in rh.iter().enumerate() {
                            if !cr_h.is_zero() {
                                m[r][s] = &m[r][s] + &(&(cr_a * cr_h) * &t.coeff);
                            }
                        }
                    }
                }
                rule[cr.h_gen][cr.a_gen] = Some(m);
            }
            let mut memo: HashMap<(usize, usize), Option<Matrix>> = HashMap::new();
            let mut cross: Tensor4 = vec![vec![Vec::new(); na]; nh];
            for j in 0..nh {
                for i in 0..na {
                    cross[j][i] = cross_pair(
                        j,
                        i,
                        &ast.algebra,
                        d_ast,
                        &rule,
                        &a_rw,
                        &h_rw,
                        &a_parts.data.mult,
                        &h_parts.data.mult,
                        &mut memo,
                    )?;
                }
            }
            smash = Some(build_smash_custom(
                a_parts.data.clone(),
                h_parts.data.clone(),
                cross,
            )?);
        }

        if !ast.pairing.is_empty() {
            let a_rw = Rewriter {
                relations: &ast.algebra.relations,
                index: a_parts.rewriter_index.clone(),
                dim: a_parts.data.dim,
                gens: &ast.algebra.generators,
            };
            let h_rw = Rewriter {
                relations: &d_ast.relations,
                index: h_parts.rewriter_index.clone(),
                dim: h_parts.data.dim,
                gens: &d_ast.generators,
            };
            let mut p = zero_matrix(h_parts.data.dim, a_parts.data.dim);
            for (hw, aw, value) in &ast.pairing {
                let rh = h_rw.reduce(hw, false)?;
                let ra = a_rw.reduce(aw, false)?;
                for (j, cj) in rh.iter().enumerate() {
                    for (i, ci) in ra.iter().enumerate() {
                        let c = &(cj * ci) * value;
                        if !c.is_zero() {
                            p[j][i] = &p[j][i] + &c;
                        }
                    }
                }
            }
            pair = Some(if braided.is_none() && dual_braided.is_none() {
                DualPair::new(a_parts.data.clone(), h_parts.data.clone(), p)?
            } else {
                DualPair::assemble_unchecked(a_parts.data.clone(), h_parts.data.clone(), p)?
            });
        } else if let Some(s) = &smash {
            pair = Some(DualPair::assemble_unchecked(
                a_parts.data.clone(),
                h_parts.data.clone(),
                s.pairing.clone(),
            )?);
        }

        dual = Some(h_parts.data);
    }

    Ok(Compiled {
        hopf: a_parts.data,
        braided,
        dual,
        dual_braided,
        pair,
        smash,
        warnings,
    })
}

/// Evaluates an element expression in a presented algebra's generators,
/// normalized to basis coordinates.
pub fn eval_element(ast: &AlgebraAst, text: &str) -> Result<Vector> {
    let poly = super::parse::parse_expr_poly(text, &ast.generators)?;
    let mut coords = zero_vector(ast.basis.len());
    for t in &poly {
        let r = normalize_word(&ast.relations, &ast.basis, &ast.generators, &t.word)?;
        for (k, c) in r.iter().enumerate() {
            coords[k] = &coords[k] + &(c * &t.coeff);
        }
    }
    Ok(coords)
}

/// One-off normalization of a word against a relation list and declared
/// basis; used by the emitter when deriving a minimal relation set.
pub(super) fn normalize_word(
    relations: &[Relation],
    basis: &[Word],
    gens: &[String],
    word: &[usize],
) -> Result<Vector> {
    let index: HashMap<Word, usize> = basis.iter().cloned().zip(0..).collect();
    let rw = Rewriter {
        relations,
        index,
        dim: basis.len(),
        gens,
    };
    rw.reduce(word, false)
}
