//! The `.hopf` presentation layer: parse generator/relation sources, emit
//! canonical text, compile presentations into validated structure-constant
//! data, and expose the builtin example library.

mod builtins;
mod compile;
mod emit;
mod parse;

pub use builtins::{builtin, builtin_source};
pub use compile::{compile, eval_element, Compiled, REWRITE_BUDGET};
pub use emit::{ast_from_hopf, emit, emit_source};
pub use parse::parse;

use crate::scalars::RatFunc;

/// A word in generator indices; the empty word is the unit.
pub type Word = Vec<usize>;

#[derive(Debug, Clone, PartialEq)]
pub struct PolyTerm {
    pub coeff: RatFunc,
    pub word: Word,
}

pub type WordPoly = Vec<PolyTerm>;

#[derive(Debug, Clone, PartialEq)]
pub struct TensorTerm {
    pub coeff: RatFunc,
    pub left: Word,
    pub right: Word,
}

pub type WordTensor = Vec<TensorTerm>;

/// A normal-ordered mixed term c·(A word)·(H word) in a smash block.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedTerm {
    pub coeff: RatFunc,
    pub a_word: Word,
    pub h_word: Word,
}

/// Rewrite rule: the left-hand word (not a basis word) equals the
/// right-hand linear combination of basis words.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: WordPoly,
}

/// Cross relation for one generator pair: (H gen)·(A gen) -> polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossRule {
    pub h_gen: usize,
    pub a_gen: usize,
    pub rhs: Vec<MixedTerm>,
}

/// One algebra's worth of presentation data. The coproduct, counit, and
/// antipode are per-generator; the optional braiding table is indexed by
/// generator pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraAst {
    pub name: String,
    pub uses_q: bool,
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
    pub basis: Vec<Word>,
    pub coproduct: Vec<WordTensor>,
    pub counit: Vec<RatFunc>,
    pub antipode: Vec<WordPoly>,
    pub braiding: Option<Vec<Vec<Option<WordTensor>>>>,
}

/// A full `.hopf` source: the primary algebra plus optional dual block
/// (with optional explicit pairing) and smash cross relations.
#[derive(Debug, Clone, PartialEq)]
pub struct PresentationAst {
    pub algebra: AlgebraAst,
    pub dual: Option<AlgebraAst>,
    pub pairing: Vec<(Word, Word, RatFunc)>,
    pub cross: Vec<CrossRule>,
}

#[cfg(test)]
mod tests;

/// Canonical rendering of a generator word: `1` for the empty word,
/// factors joined with `*`, consecutive repeats collapsed to powers.
pub fn word_label(word: &[usize], gens: &[String]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let g = word[i];
        let mut k = 1;
        while i + k < word.len() && word[i + k] == g {
            k += 1;
        }
        if k == 1 {
            parts.push(gens[g].clone());
        } else {
            parts.push(format!("{}^{k}", gens[g]));
        }
        i += k;
    }
    parts.join("*")
}
