use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A fixed-length sequence of letters drawn from an alphabet `{0, .., A-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    alphabet: usize,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(alphabet: usize, letters: Vec<usize>) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::param("alphabet must contain at least one letter"));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l >= alphabet) {
            return Err(Error::invalid(format!(
                "letter {bad} outside alphabet of size {alphabet}"
            )));
        }
        Ok(Word { alphabet, letters })
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

pub fn word_count(alphabet: usize, length: usize) -> Result<BigUint> {
    if alphabet == 0 {
        return Err(Error::param("alphabet must contain at least one letter"));
    }
    Ok((0..length).fold(BigUint::one(), |acc, _| acc * alphabet))
}

/// Base-`A` value of the letters, first letter most significant.
pub fn rank_word(w: &Word) -> BigUint {
    w.letters
        .iter()
        .fold(BigUint::zero(), |acc, &l| acc * w.alphabet + l)
}

pub fn unrank_word(rank: &BigUint, alphabet: usize, length: usize) -> Result<Word> {
    let size = word_count(alphabet, length)?;
    if rank >= &size {
        return Err(Error::Range {
            index: rank.to_string(),
            size: size.to_string(),
        });
    }
    let mut r = rank.clone();
    let mut letters = vec![0usize; length];
    for slot in letters.iter_mut().rev() {
        *slot = (&r % alphabet).to_usize().expect("digit below alphabet size");
        r /= alphabet;
    }
    Ok(Word { alphabet, letters })
}
