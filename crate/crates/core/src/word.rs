use alloc::vec::Vec;
use core::fmt;

/// A word in the generators of a surface group.
///
/// Letters are signed 1-based generator indices: `3` is the third generator,
/// `-3` its inverse. Zero never occurs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: Vec<i32>) -> Self {
        let mut w = Word(Vec::with_capacity(letters.len()));
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: i32) -> Self {
        Word(alloc::vec![l])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a letter with free cancellation.
    pub fn push(&mut self, l: i32) {
        debug_assert!(l != 0);
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    #[must_use]
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    #[must_use]
    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    #[must_use]
    pub fn pow(&self, n: i32) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Removes cancelling pairs across the ends; the result is a conjugate.
    #[must_use]
    pub fn cyclically_reduced(&self) -> Word {
        let s = &self.0;
        let (mut i, mut j) = (0usize, s.len());
        while j - i >= 2 && s[i] == -s[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(s[i..j].to_vec())
    }

    /// Lexicographically smallest rotation of the cyclic reduction of the word
    /// or its inverse; equal for freely conjugate words and for a word and
    /// its inverse.
    pub fn canonical_cyclic(&self) -> Word {
        let r = self.cyclically_reduced();
        let inv = r.inverse();
        let best = |w: &Word| -> Word {
            let n = w.0.len();
            (0..n.max(1))
                .map(|k| {
                    let mut v = w.0[k.min(n)..].to_vec();
                    v.extend_from_slice(&w.0[..k.min(n)]);
                    Word(v)
                })
                .min()
                .unwrap_or_default()
        };
        best(&r).min(best(&inv))
    }

    /// Rotation by `k` letters to the left.
    #[must_use]
    pub fn rotated(&self, k: usize) -> Word {
        let n = self.0.len();
        if n == 0 {
            return Word::empty();
        }
        let k = k % n;
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word::new(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
