use std::fmt;

use super::GroupCohError;

/// A generator or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn inv(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }
}

pub type Word = Vec<Letter>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupCohError> {
        for (i, name) in generators.iter().enumerate() {
            if name.is_empty() || name.contains("^") {
                return Err(GroupCohError::InvalidPresentation(format!("bad generator name {name:?}")));
            }
            if generators[..i].contains(name) {
                return Err(GroupCohError::InvalidPresentation(format!("duplicate generator {name:?}")));
            }
        }
        for (r, word) in relators.iter().enumerate() {
            if let Some(l) = word.iter().find(|l| l.generator >= generators.len()) {
                return Err(GroupCohError::InvalidPresentation(format!(
                    "relator {r} uses undeclared generator index {}",
                    l.generator
                )));
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Parse relators written as symbol lists, `"a"` or `"a^-1"`.
    pub fn from_symbols(generators: &[&str], relators: &[&[&str]]) -> Result<Self, GroupCohError> {
        let names: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let words = relators
            .iter()
            .map(|w| w.iter().map(|s| parse_symbol(&names, s)).collect::<Result<Word, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(names, words)
    }

    /// Free group on the given generators.
    pub fn free(generators: &[&str]) -> Self {
        Presentation::from_symbols(generators, &[]).expect("distinct generator names")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn symbol(&self, l: Letter) -> String {
        let name = &self.generators[l.generator];
        if l.inverse {
            format!("{name}^-1")
        } else {
            name.clone()
        }
    }

    pub fn word_symbols(&self, w: &[Letter]) -> Vec<String> {
        w.iter().map(|&l| self.symbol(l)).collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.generators.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}", self.word_symbols(r).join(" "))?;
        }
        write!(f, ">")
    }
}

pub fn parse_symbol(names: &[String], s: &str) -> Result<Letter, GroupCohError> {
    let (base, inverse) = match s.strip_suffix("^-1") {
        Some(b) => (b, true),
        None => (s, false),
    };
    names
        .iter()
        .position(|n| n == base)
        .map(|generator| Letter { generator, inverse })
        .ok_or_else(|| GroupCohError::InvalidPresentation(format!("unknown symbol {s:?}")))
}
