//! Alphabet-level construction of the d-Fibonacci and de Bruijn digraphs.
//!
//! Vertices are length-k digit words over [0, d-1]. A word is admissible
//! when every digit that follows a nonzero digit x equals x+1 (mod d); a
//! digit following 0 is free. For d = 2 this is exactly "no two consecutive
//! 1's". Arcs shift a word left and append an admissible digit.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::recurrence;

/// Default refusal threshold for generated vertex sets.
pub const DEFAULT_VERTEX_CAP: u64 = 10_000_000;

/// An admissible word: the vertex label of `F(d, k)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    digits: Vec<u32>,
    d: u32,
}

impl Word {
    /// Builds a word, enforcing both the digit range and the successor rule.
    pub fn new(digits: Vec<u32>, d: u32) -> Result<Word> {
        match is_admissible(&digits, d)? {
            true => Ok(Word { digits, d }),
            false => {
                let position = violation_position(&digits, d).unwrap_or(0);
                Err(Error::NotAdmissible {
                    word: render_digits(&digits, d),
                    position,
                })
            }
        }
    }

    /// Parses the plain serialization: contiguous digits for d <= 10,
    /// comma-separated decimal otherwise.
    pub fn parse(s: &str, d: u32) -> Result<Word> {
        let digits = parse_digits(s, d)?;
        Word::new(digits, d)
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn alphabet(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn last_digit(&self) -> u32 {
        *self.digits.last().expect("words have length >= 1")
    }

    /// The words reachable in one step: shift left, append an admissible digit.
    pub fn successors(&self) -> Vec<Word> {
        admissible_successors(self.last_digit(), self.d)
            .expect("stored digits are in range")
            .into_iter()
            .map(|y| {
                let mut digits = self.digits[1..].to_vec();
                digits.push(y);
                Word::new(digits, self.d).expect("shift of an admissible word is admissible")
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_digits(&self.digits, self.d))
    }
}

pub(crate) fn render_digits(digits: &[u32], d: u32) -> String {
    if d <= 10 {
        digits.iter().map(|x| x.to_string()).collect()
    } else {
        digits
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn parse_digits(s: &str, d: u32) -> Result<Vec<u32>> {
    let parts: Vec<&str> = if d <= 10 {
        s.split("").filter(|p| !p.is_empty()).collect()
    } else {
        s.split(',').collect()
    };
    parts
        .iter()
        .map(|p| {
            p.parse::<u32>()
                .map_err(|_| Error::InvalidArgument(format!("bad digit {:?} in word {:?}", p, s)))
        })
        .collect()
}

/// The digits allowed after `x`, in ascending order: all of [0, d-1] when
/// x = 0, the singleton {x+1 mod d} otherwise.
pub fn admissible_successors(x: u32, d: u32) -> Result<Vec<u32>> {
    if d < 2 {
        return Err(Error::AlphabetTooSmall(d));
    }
    if x >= d {
        return Err(Error::DigitOutOfRange { digit: x, d });
    }
    if x == 0 {
        Ok((0..d).collect())
    } else {
        Ok(vec![(x + 1) % d])
    }
}

/// Whether a digit sequence satisfies the successor rule throughout.
pub fn is_admissible(digits: &[u32], d: u32) -> Result<bool> {
    if d < 2 {
        return Err(Error::AlphabetTooSmall(d));
    }
    for &x in digits {
        if x >= d {
            return Err(Error::DigitOutOfRange { digit: x, d });
        }
    }
    Ok(violation_position(digits, d).is_none())
}

fn violation_position(digits: &[u32], d: u32) -> Option<usize> {
    digits
        .windows(2)
        .position(|pair| pair[0] != 0 && pair[1] != (pair[0] + 1) % d)
}

/// All admissible words of length `k` in lexicographic order. The count
/// always equals the recurrence value `N(d, k)`.
pub fn enumerate_words(d: u32, k: u32) -> Result<Vec<Word>> {
    enumerate_words_capped(d, k, DEFAULT_VERTEX_CAP)
}

pub fn enumerate_words_capped(d: u32, k: u32, cap: u64) -> Result<Vec<Word>> {
    check_dk(d, k)?;
    guard_cap("word enumeration", &recurrence::vertex_count(d, k as i64)?, cap)?;
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::with_capacity(k as usize);
    // Depth-first in ascending digit order yields lexicographic output.
    fn extend(stack: &mut Vec<u32>, k: usize, d: u32, out: &mut Vec<Word>) {
        if stack.len() == k {
            out.push(Word {
                digits: stack.clone(),
                d,
            });
            return;
        }
        let choices = match stack.last() {
            None => (0..d).collect::<Vec<u32>>(),
            Some(&x) => admissible_successors(x, d).expect("stack digits are in range"),
        };
        for y in choices {
            stack.push(y);
            extend(stack, k, d, out);
            stack.pop();
        }
    }
    extend(&mut stack, k as usize, d, &mut out);
    Ok(out)
}

/// The d-Fibonacci digraph `F(d, k)`: admissible words with shift arcs.
/// Out-degree is d for words ending in 0 and 1 otherwise.
pub fn build_fibonacci_digraph(d: u32, k: u32) -> Result<Digraph> {
    build_fibonacci_digraph_capped(d, k, DEFAULT_VERTEX_CAP)
}

pub fn build_fibonacci_digraph_capped(d: u32, k: u32, cap: u64) -> Result<Digraph> {
    let words = enumerate_words_capped(d, k, cap)?;
    digraph_on_words(&words, |w| w.successors())
}

/// The de Bruijn digraph `B(d, k)`: all d^k words, out-degree d everywhere.
pub fn build_de_bruijn(d: u32, k: u32) -> Result<Digraph> {
    build_de_bruijn_capped(d, k, DEFAULT_VERTEX_CAP)
}

pub fn build_de_bruijn_capped(d: u32, k: u32, cap: u64) -> Result<Digraph> {
    check_dk(d, k)?;
    guard_cap(
        "de Bruijn construction",
        &BigInt::from(d).pow(k),
        cap,
    )?;
    let mut words: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..k {
        words = words
            .into_iter()
            .flat_map(|w| {
                (0..d).map(move |y| {
                    let mut next = w.clone();
                    next.push(y);
                    next
                })
            })
            .collect();
    }
    let labels: Vec<String> = words.iter().map(|w| render_digits(w, d)).collect();
    let index: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut arcs = Vec::new();
    for (i, w) in words.iter().enumerate() {
        for y in 0..d {
            let mut next = w[1..].to_vec();
            next.push(y);
            let head = index[render_digits(&next, d).as_str()];
            arcs.push((i, head));
        }
    }
    Digraph::from_simple_arcs(labels, arcs)
}

/// Indices (in lexicographic word order) of the vertices of `B(d, k)` whose
/// words are admissible; inducing on them recovers `F(d, k)`.
pub fn admissible_indices_in_de_bruijn(b: &Digraph, d: u32) -> Result<Vec<usize>> {
    let mut indices = Vec::new();
    for (i, label) in b.labels().iter().enumerate() {
        if is_admissible(&parse_digits(label, d)?, d)? {
            indices.push(i);
        }
    }
    Ok(indices)
}

fn digraph_on_words<F>(words: &[Word], successors: F) -> Result<Digraph>
where
    F: Fn(&Word) -> Vec<Word>,
{
    let labels: Vec<String> = words.iter().map(Word::to_string).collect();
    let index: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut arcs = Vec::new();
    for (i, w) in words.iter().enumerate() {
        for next in successors(w) {
            let head = *index
                .get(next.to_string().as_str())
                .ok_or_else(|| Error::InvariantViolation(format!("successor {} missing", next)))?;
            arcs.push((i, head));
        }
    }
    Digraph::from_simple_arcs(labels, arcs)
}

fn check_dk(d: u32, k: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::AlphabetTooSmall(d));
    }
    if k < 1 {
        return Err(Error::LengthTooSmall(k as i64));
    }
    Ok(())
}

fn guard_cap(what: &'static str, needed: &BigInt, cap: u64) -> Result<()> {
    if needed > &BigInt::from(cap) {
        return Err(Error::CapExceeded {
            what,
            needed: needed.to_string(),
            cap,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn successors_follow_definition() {
        assert_eq!(admissible_successors(0, 2).unwrap(), vec![0, 1]);
        assert_eq!(admissible_successors(1, 2).unwrap(), vec![0]);
        assert_eq!(admissible_successors(3, 5).unwrap(), vec![4]);
        assert!(admissible_successors(5, 5).is_err());
        assert!(admissible_successors(0, 1).is_err());
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(&[0, 1, 0, 1], 2).unwrap());
        assert!(!is_admissible(&[0, 1, 1, 0], 2).unwrap());
        assert!(is_admissible(&[0, 1, 2, 3, 4, 0], 5).unwrap());
        assert!(matches!(
            is_admissible(&[0, 7], 5),
            Err(Error::DigitOutOfRange { .. })
        ));
    }

    #[test]
    fn enumerate_f24_matches_listed_vertices() {
        let words: Vec<String> = enumerate_words(2, 4)
            .unwrap()
            .iter()
            .map(Word::to_string)
            .collect();
        assert_eq!(
            words,
            ["0000", "0001", "0010", "0100", "0101", "1000", "1001", "1010"]
        );
    }

    #[test]
    fn enumerate_length_one_is_alphabet() {
        let words: Vec<String> = enumerate_words(2, 1)
            .unwrap()
            .iter()
            .map(Word::to_string)
            .collect();
        assert_eq!(words, ["0", "1"]);
    }

    #[test]
    fn enumerate_d5_k2_brute_force() {
        // Oracle: scan all 25 digit pairs with the raw rule.
        let mut expected = 0;
        for x in 0..5u32 {
            for y in 0..5u32 {
                if x == 0 || y == (x + 1) % 5 {
                    expected += 1;
                }
            }
        }
        assert_eq!(expected, 9);
        assert_eq!(enumerate_words(5, 2).unwrap().len(), expected);
    }

    #[test]
    fn no_consecutive_ones_oracle_d2() {
        // For d = 2 the vertex set is exactly the binary words with no "11".
        for k in 1..=10u32 {
            let ours: Vec<String> = enumerate_words(2, k)
                .unwrap()
                .iter()
                .map(Word::to_string)
                .collect();
            let mut brute = Vec::new();
            for v in 0..(1u32 << k) {
                let bits: Vec<u32> = (0..k).rev().map(|i| (v >> i) & 1).collect();
                if bits.windows(2).all(|p| !(p[0] == 1 && p[1] == 1)) {
                    brute.push(bits.iter().map(|b| b.to_string()).collect::<String>());
                }
            }
            assert_eq!(ours, brute, "k = {}", k);
        }
    }

    #[test]
    fn fibonacci_digraph_small_shapes() {
        // F(2,1) is the base digraph on {0, 1}: arcs 0->0, 0->1, 1->0.
        let g = build_fibonacci_digraph(2, 1).unwrap();
        assert_eq!(g.labels(), &["0", "1"]);
        assert_eq!(g.arcs(), &[(0, 0, 1), (0, 1, 1), (1, 0, 1)]);

        let g = build_fibonacci_digraph(2, 4).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.arc_count(), 13);

        assert_eq!(build_fibonacci_digraph(3, 2).unwrap().order(), 5);
    }

    #[test]
    fn fibonacci_out_degrees_split_on_last_digit() {
        let g = build_fibonacci_digraph(2, 4).unwrap();
        let profile = g.degree_profile();
        assert_eq!(profile.out_degrees.get(&2), Some(&5));
        assert_eq!(profile.out_degrees.get(&1), Some(&3));
    }

    #[test]
    fn de_bruijn_small_shapes() {
        let b21 = build_de_bruijn(2, 1).unwrap();
        assert_eq!((b21.order(), b21.arc_count()), (2, 4));
        let b23 = build_de_bruijn(2, 3).unwrap();
        assert_eq!((b23.order(), b23.arc_count()), (8, 16));
    }

    #[test]
    fn fibonacci_is_induced_in_de_bruijn() {
        for (d, k) in [(2, 4), (2, 5), (3, 3)] {
            let b = build_de_bruijn(d, k).unwrap();
            let f = build_fibonacci_digraph(d, k).unwrap();
            let keep = admissible_indices_in_de_bruijn(&b, d).unwrap();
            assert_eq!(b.induced_subdigraph(&keep).unwrap(), f, "d={} k={}", d, k);
        }
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            enumerate_words_capped(2, 30, 100),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            build_de_bruijn_capped(2, 30, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_fibonacci_digraph(1, 3).is_err());
        assert!(build_fibonacci_digraph(2, 0).is_err());
    }

    #[test]
    fn wide_alphabet_words_comma_separate() {
        let w = Word::new(vec![0, 11, 0], 12).unwrap();
        assert_eq!(w.to_string(), "0,11,0");
        assert_eq!(Word::parse("0,11,0", 12).unwrap(), w);
    }
}
