use std::fmt;

use super::DiagramError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub rank: i64,
}

/// Ordered list of rank-labelled generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GeneratorTable {
    gens: Vec<Generator>,
}

impl GeneratorTable {
    pub fn new(gens: Vec<(String, i64)>) -> Result<Self, DiagramError> {
        let mut table = GeneratorTable::default();
        for (name, rank) in gens {
            table.push(&name, rank)?;
        }
        Ok(table)
    }

    /// Table with a single generator `N`.
    pub fn single(rank: i64) -> Self {
        GeneratorTable {
            gens: vec![Generator { name: "N".into(), rank }],
        }
    }

    pub fn push(&mut self, name: &str, rank: i64) -> Result<usize, DiagramError> {
        let valid = !name.is_empty()
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            && !name.starts_with(|c: char| c.is_ascii_digit());
        if !valid {
            return Err(DiagramError::Parse(format!("invalid generator name `{name}`")));
        }
        if self.index(name).is_some() {
            return Err(DiagramError::Parse(format!("duplicate generator `{name}`")));
        }
        self.gens.push(Generator {
            name: name.into(),
            rank,
        });
        Ok(self.gens.len() - 1)
    }

    /// Parses `N:-2,M:3`.
    pub fn parse(spec: &str) -> Result<Self, DiagramError> {
        let mut table = GeneratorTable::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, rank) = item
                .split_once(':')
                .ok_or_else(|| DiagramError::Parse(format!("expected name:rank, got `{item}`")))?;
            let rank = rank
                .trim()
                .parse()
                .map_err(|_| DiagramError::Parse(format!("bad rank in `{item}`")))?;
            table.push(name.trim(), rank)?;
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn rank(&self, i: usize) -> i64 {
        self.gens[i].rank
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    /// Parses a word of comma-separated `name` / `name*` tokens; `1` or empty is the unit.
    pub fn parse_word(&self, s: &str) -> Result<Word, DiagramError> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::unit());
        }
        s.split(',')
            .map(|tok| {
                let tok = tok.trim();
                let (name, dual) = match tok.strip_suffix('*') {
                    Some(n) => (n, true),
                    None => (tok, false),
                };
                let gen = self
                    .index(name)
                    .ok_or_else(|| DiagramError::Parse(format!("unknown generator `{name}`")))?;
                Ok(Letter { gen, dual })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.0.iter()
            .map(|l| format!("{}{}", self.gens[l.gen].name, if l.dual { "*" } else { "" }))
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub dual: bool,
}

impl Letter {
    pub fn plain(gen: usize) -> Self {
        Letter { gen, dual: false }
    }

    pub fn dual(gen: usize) -> Self {
        Letter { gen, dual: true }
    }

    pub fn flip(self) -> Self {
        Letter {
            gen: self.gen,
            dual: !self.dual,
        }
    }

    /// Whether a cap or cup may join these two letters.
    pub fn pairs_with(self, other: Letter) -> bool {
        self.gen == other.gen && self.dual != other.dual
    }
}

/// Tensor word of letters; the empty word is the unit object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    /// `N^{⊗r}` for generator `gen`.
    pub fn power(gen: usize, r: usize) -> Self {
        Word(vec![Letter::plain(gen); r])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Dual word: reversed, orientations flipped.
    pub fn dual(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.flip()).collect())
    }

    /// Net charge (plain minus dual count) per generator index.
    pub fn charge(&self, ngens: usize) -> Vec<i64> {
        let mut c = vec![0i64; ngens];
        for l in &self.0 {
            if l.gen >= c.len() {
                c.resize(l.gen + 1, 0);
            }
            c[l.gen] += if l.dual { -1 } else { 1 };
        }
        c
    }

    pub fn split_at(&self, k: usize) -> (Word, Word) {
        (Word(self.0[..k].to_vec()), Word(self.0[k..].to_vec()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let toks: Vec<String> = self
            .0
            .iter()
            .map(|l| format!("g{}{}", l.gen, if l.dual { "*" } else { "" }))
            .collect();
        write!(f, "{}", toks.join(","))
    }
}
