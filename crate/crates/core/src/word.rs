//! Free-group generators and words over `a_1, ..., a_n`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// `a_i` (`inverse == false`) or `a_i^-1`. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub index: u32,
    pub inverse: bool,
}

impl Generator {
    pub fn new(index: u32) -> Self {
        Generator { index, inverse: false }
    }

    pub fn inv(index: u32) -> Self {
        Generator { index, inverse: true }
    }

    pub fn inverse(self) -> Self {
        Generator { inverse: !self.inverse, ..self }
    }

    /// All `2n` letters in the fixed order `a_1, a_1^-1, ..., a_n, a_n^-1`.
    pub fn all(rank: usize) -> impl Iterator<Item = Generator> {
        (1..=rank as u32).flat_map(|i| [Generator::new(i), Generator::inv(i)])
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "a{}^-1", self.index)
        } else {
            write!(f, "a{}", self.index)
        }
    }
}

/// A word, stored as written. `reduce` gives the freely reduced normal form.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    /// `a_i^k` for any integer `k`.
    pub fn power(index: u32, k: i64) -> Self {
        let g = if k < 0 { Generator::inv(index) } else { Generator::new(index) };
        Word(vec![g; k.unsigned_abs() as usize])
    }

    pub fn reduce(&self) -> Word {
        let mut out: Vec<Generator> = Vec::with_capacity(self.0.len());
        for &g in &self.0 {
            if out.last() == Some(&g.inverse()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != w[0].inverse())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|g| g.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, g: Generator) {
        self.0.push(g);
    }

    /// Largest generator index used, 0 for the empty word.
    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|g| g.index).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse word token `{token}`: {reason}")]
pub struct WordParseError {
    pub token: String,
    pub reason: &'static str,
}

impl FromStr for Word {
    type Err = WordParseError;

    /// Accepts whitespace-separated tokens `aK`, `aK^-1`, `aK^e` (any integer `e`), and `e`
    /// or the empty string for the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            if token == "e" || token == "1" {
                continue;
            }
            let err = |reason| WordParseError { token: token.to_string(), reason };
            let body = token.strip_prefix('a').ok_or_else(|| err("expected a letter `aK`"))?;
            let (index, exponent) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i64>().map_err(|_| err("bad exponent"))?),
                None => (body, 1),
            };
            let index: u32 = index.parse().map_err(|_| err("bad generator index"))?;
            if index == 0 {
                return Err(err("generator indices start at 1"));
            }
            letters.extend(Word::power(index, exponent).0);
        }
        Ok(Word(letters))
    }
}
