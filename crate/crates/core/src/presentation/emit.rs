//! Canonical `.hopf` text emission, both from a parsed presentation and
//! from compiled structure-constant data whose basis labels form monomial
//! words.

use super::compile::normalize_word;
use super::{
    word_label, AlgebraAst, PolyTerm, PresentationAst, Relation, TensorTerm, Word, WordPoly,
    WordTensor,
};
use crate::error::{Error, Result};
use crate::hopf::{render_linear, HopfAlgebraData};
use crate::scalars::RatFunc;

fn render_poly(p: &WordPoly, gens: &[String]) -> String {
    let coords: Vec<RatFunc> = p.iter().map(|t| t.coeff.clone()).collect();
    let labels: Vec<String> = p.iter().map(|t| word_label(&t.word, gens)).collect();
    render_linear(&coords, &labels)
}

fn render_tensor(t: &WordTensor, gens: &[String]) -> String {
    let coords: Vec<RatFunc> = t.iter().map(|x| x.coeff.clone()).collect();
    let labels: Vec<String> = t
        .iter()
        .map(|x| {
            format!(
                "{}(*){}",
                word_label(&x.left, gens),
                word_label(&x.right, gens)
            )
        })
        .collect();
    render_linear(&coords, &labels)
}

fn mixed_label(a_word: &[usize], h_word: &[usize], a_gens: &[String], h_gens: &[String]) -> String {
    match (a_word.is_empty(), h_word.is_empty()) {
        (true, true) => "1".to_string(),
        (true, false) => word_label(h_word, h_gens),
        (false, true) => word_label(a_word, a_gens),
        (false, false) => format!(
            "{}*{}",
            word_label(a_word, a_gens),
            word_label(h_word, h_gens)
        ),
    }
}

fn push_algebra(out: &mut String, a: &AlgebraAst) {
    out.push_str("algebra ");
    out.push_str(&a.name);
    if a.uses_q {
        out.push_str(" over Q(q)");
    }
    out.push('\n');
    out.push_str("generators ");
    out.push_str(&a.generators.join(" "));
    out.push('\n');
    if !a.relations.is_empty() {
        out.push_str("relations\n");
        for rel in &a.relations {
            out.push_str(&format!(
                "  {} = {}\n",
                word_label(&rel.lhs, &a.generators),
                render_poly(&rel.rhs, &a.generators)
            ));
        }
    }
    out.push_str("basis ");
    let words: Vec<String> = a
        .basis
        .iter()
        .map(|w| word_label(w, &a.generators))
        .collect();
    out.push_str(&words.join(" "));
    out.push('\n');
    out.push_str("coproduct\n");
    for (g, t) in a.coproduct.iter().enumerate() {
        out.push_str(&format!(
            "  {} -> {}\n",
            a.generators[g],
            render_tensor(t, &a.generators)
        ));
    }
    out.push_str("counit\n");
    for (g, c) in a.counit.iter().enumerate() {
        out.push_str(&format!("  {} -> {}\n", a.generators[g], c));
    }
    out.push_str("antipode\n");
    for (g, p) in a.antipode.iter().enumerate() {
        out.push_str(&format!(
            "  {} -> {}\n",
            a.generators[g],
            render_poly(p, &a.generators)
        ));
    }
    if let Some(table) = &a.braiding {
        out.push_str("braiding\n");
        for (i, row) in table.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if let Some(t) = cell {
                    out.push_str(&format!(
                        "  {}(*){} -> {}\n",
                        a.generators[i],
                        a.generators[j],
                        render_tensor(t, &a.generators)
                    ));
                }
            }
        }
    }
}

/// Canonical source text for a presentation; `parse` of the output
/// reproduces the presentation exactly.
pub fn emit_source(ast: &PresentationAst) -> String {
    let mut out = String::new();
    push_algebra(&mut out, &ast.algebra);
    if let Some(d) = &ast.dual {
        out.push_str("dual\n");
        push_algebra(&mut out, d);
        if !ast.pairing.is_empty() {
            out.push_str("pairing\n");
            for (hw, aw, v) in &ast.pairing {
                out.push_str(&format!(
                    "  {}(*){} -> {}\n",
                    word_label(hw, &d.generators),
                    word_label(aw, &ast.algebra.generators),
                    v
                ));
            }
        }
        out.push_str("end\n");
    }
    if !ast.cross.is_empty() {
        let d = ast.dual.as_ref().expect("cross requires a dual block");
        out.push_str("smash\n");
        for cr in &ast.cross {
            let coords: Vec<RatFunc> = cr.rhs.iter().map(|t| t.coeff.clone()).collect();
            let labels: Vec<String> = cr
                .rhs
                .iter()
                .map(|t| mixed_label(&t.a_word, &t.h_word, &ast.algebra.generators, &d.generators))
                .collect();
            out.push_str(&format!(
                "  {}*{} -> {}\n",
                d.generators[cr.h_gen],
                ast.algebra.generators[cr.a_gen],
                render_linear(&coords, &labels)
            ));
        }
        out.push_str("end\n");
    }
    out
}

fn parse_label_word(label: &str, gens: &mut Vec<String>) -> Result<Word> {
    let mut word = Vec::new();
    for part in label.split('*') {
        let (name, power) = match part.split_once('^') {
            Some((n, p)) => {
                let k: usize = p.parse().map_err(|_| {
                    Error::NotPresentable(format!("label `{label}` has a bad power"))
                })?;
                (n, k)
            }
            None => (part, 1),
        };
        if name.is_empty()
            || power == 0
            || !name.chars().next().unwrap().is_ascii_alphabetic()
            || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            || name == "q"
        {
            return Err(Error::NotPresentable(format!(
                "label `{label}` is not a generator word"
            )));
        }
        let g = match gens.iter().position(|x| x == name) {
            Some(g) => g,
            None => {
                gens.push(name.to_string());
                gens.len() - 1
            }
        };
        for _ in 0..power {
            word.push(g);
        }
    }
    Ok(word)
}

/// Reads a monomial-basis presentation back off compiled data: the labels
/// must parse as generator words whose products reproduce the basis, and
/// the relation set is the minimal one that renormalizes every product.
pub fn ast_from_hopf(h: &HopfAlgebraData) -> Result<AlgebraAst> {
    let dim = h.dim;
    if h.labels.is_empty() || h.labels[0] != "1" {
        return Err(Error::NotPresentable("basis must start with 1".into()));
    }
    let mut unit_ok = h.unit[0].is_one();
    for c in &h.unit[1..] {
        unit_ok &= c.is_zero();
    }
    if !unit_ok {
        return Err(Error::NotPresentable("unit is not the first basis word".into()));
    }
    let mut gens: Vec<String> = Vec::new();
    let mut basis: Vec<Word> = vec![Vec::new()];
    for label in &h.labels[1..] {
        basis.push(parse_label_word(label, &mut gens)?);
    }

    // each generator must itself be a basis word
    let gen_basis: Vec<usize> = (0..gens.len())
        .map(|g| {
            basis
                .iter()
                .position(|w| w[..] == [g])
                .ok_or_else(|| {
                    Error::NotPresentable(format!("generator `{}` is not a basis word", gens[g]))
                })
        })
        .collect::<Result<_>>()?;

    // the declared word of every basis element must multiply out to it
    for (i, w) in basis.iter().enumerate() {
        let mut acc = h.unit.clone();
        for &g in w {
            acc = h.mul_coords(&acc, &h.basis_element(gen_basis[g]).coords);
        }
        let expected = h.basis_element(i).coords;
        if acc != expected {
            return Err(Error::NotPresentable(format!(
                "label `{}` does not multiply out to its basis element",
                h.labels[i]
            )));
        }
    }

    // minimal relation set: add a rule for (basis word)·(generator) only
    // when the current rules cannot already normalize it correctly
    let mut relations: Vec<Relation> = Vec::new();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by_key(|&i| basis[i].len());
    for &i in &order {
        for g in 0..gens.len() {
            let mut w = basis[i].clone();
            w.push(g);
            if basis.contains(&w) {
                continue;
            }
            let expected = &h.mult[i][gen_basis[g]];
            if let Ok(got) = normalize_word(&relations, &basis, &gens, &w) {
                if &got == expected {
                    continue;
                }
            }
            let rhs: WordPoly = expected
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| PolyTerm {
                    coeff: c.clone(),
                    word: basis[k].clone(),
                })
                .collect();
            relations.push(Relation { lhs: w, rhs });
        }
    }

    let row_to_poly = |row: &[RatFunc]| -> WordPoly {
        row.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| PolyTerm {
                coeff: c.clone(),
                word: basis[k].clone(),
            })
            .collect()
    };
    let coproduct: Vec<WordTensor> = (0..gens.len())
        .map(|g| {
            let m = &h.comult[gen_basis[g]];
            let mut terms = Vec::new();
            for (a, row) in m.iter().enumerate() {
                for (b, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        terms.push(TensorTerm {
                            coeff: c.clone(),
                            left: basis[a].clone(),
                            right: basis[b].clone(),
                        });
                    }
                }
            }
            terms
        })
        .collect();
    let counit: Vec<RatFunc> = (0..gens.len())
        .map(|g| h.counit[gen_basis[g]].clone())
        .collect();
    let antipode: Vec<WordPoly> = (0..gens.len())
        .map(|g| row_to_poly(&h.antipode[gen_basis[g]]))
        .collect();

    let scalar_const = |c: &RatFunc| c.is_constant();
    let uses_q = !(h
        .mult
        .iter()
        .flatten()
        .flatten()
        .all(scalar_const)
        && h.comult.iter().flatten().flatten().all(scalar_const)
        && h.antipode.iter().flatten().all(scalar_const)
        && h.counit.iter().all(scalar_const));

    Ok(AlgebraAst {
        name: h.id.clone(),
        uses_q,
        generators: gens,
        relations,
        basis,
        coproduct,
        counit,
        antipode,
        braiding: None,
    })
}

/// Canonical source for compiled data with a monomial basis labeling.
pub fn emit(h: &HopfAlgebraData) -> Result<String> {
    Ok(emit_source(&PresentationAst {
        algebra: ast_from_hopf(h)?,
        dual: None,
        pairing: Vec::new(),
        cross: Vec::new(),
    }))
}
