use std::str::FromStr;

use super::ordered::{MultisetWord, OrderedSetPartition};
use crate::error::{Error, Result};

/// Parses block syntax "2,4|3,5|1" or word syntax "31212". The presence of
/// '|' or ',' selects block syntax.
pub fn parse_partition(s: &str) -> Result<OrderedSetPartition> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty partition".into()));
    }
    if s.contains('|') || s.contains(',') {
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let mut block = Vec::new();
            for e in part.split(',') {
                let e = e.trim();
                block.push(e.parse::<usize>().map_err(|_| Error::Parse(format!("bad element {e:?} in {s:?}")))?);
            }
            blocks.push(block);
        }
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        OrderedSetPartition::from_blocks(n, blocks).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    } else {
        let word = parse_word(s)?;
        let pi = OrderedSetPartition::kernel(&word);
        if pi.to_word() != word {
            return Err(Error::Parse(format!("word {s:?} does not use exactly the letters 1..p")));
        }
        Ok(pi)
    }
}

/// Digits, one letter per character.
pub fn parse_word(s: &str) -> Result<MultisetWord> {
    let letters: Option<Vec<usize>> = s.trim().chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect();
    let letters = letters.ok_or_else(|| Error::Parse(format!("bad word {s:?}")))?;
    MultisetWord::new(letters).map_err(|e| Error::Parse(e.to_string()))
}

impl FromStr for OrderedSetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s)
    }
}
