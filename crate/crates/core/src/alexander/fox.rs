use std::collections::BTreeMap;
use std::fmt;

/// A word in free generators `x_1, x_2, ...` (stored 0-based) with exponents
/// `+1` or `-1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<(usize, i8)>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn generator(g: usize) -> Self {
        GroupWord {
            letters: vec![(g, 1)],
        }
    }

    /// Builds a word; exponents other than `+-1` are expanded into repeated
    /// letters.
    pub fn from_letters(letters: Vec<(usize, i8)>) -> Self {
        let mut out = Vec::with_capacity(letters.len());
        for (g, e) in letters {
            let unit = e.signum();
            for _ in 0..e.unsigned_abs() {
                out.push((g, unit));
            }
        }
        GroupWord { letters: out }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { letters }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Cancels adjacent `x x^-1` pairs.
    pub fn reduced(&self) -> GroupWord {
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(self.letters.len());
        for &(g, e) in &self.letters {
            match out.last() {
                Some(&(h, f)) if h == g && f == -e => {
                    out.pop();
                }
                _ => out.push((g, e)),
            }
        }
        GroupWord { letters: out }
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.0 == g)
            .map(|l| l.1 as i64)
            .sum()
    }

    pub fn total_exponent(&self) -> i64 {
        self.letters.iter().map(|l| l.1 as i64).sum()
    }

    /// Evaluates the word in a monoid given images of generators and their
    /// inverses.
    pub fn eval<T: Clone>(
        &self,
        one: T,
        image: impl Fn(usize, i8) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> T {
        self.letters
            .iter()
            .fold(one, |acc, &(g, e)| mul(&acc, &image(g, e)))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}", g + 1)?;
            if e < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Element of the integral group ring of the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElem {
    terms: BTreeMap<GroupWord, i64>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        GroupRingElem::default()
    }

    pub fn word(w: &GroupWord) -> Self {
        let mut r = GroupRingElem::zero();
        r.add_term(w, 1);
        r
    }

    pub fn add_term(&mut self, w: &GroupWord, c: i64) {
        if c == 0 {
            return;
        }
        let key = w.reduced();
        let v = self.terms.entry(key.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in other.terms() {
            r.add_term(w, c);
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in other.terms() {
            r.add_term(w, -c);
        }
        r
    }

    /// Image under a ring map determined by where each word goes.
    pub fn map<T>(
        &self,
        zero: T,
        image: impl Fn(&GroupWord) -> T,
        add_scaled: impl Fn(T, &T, i64) -> T,
    ) -> T {
        self.terms
            .iter()
            .fold(zero, |acc, (w, &c)| add_scaled(acc, &image(w), c))
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, &c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if mag != 1 {
                write!(f, "{mag}")?;
                if !w.is_empty() {
                    write!(f, " ")?;
                }
                if !w.is_empty() {
                    write!(f, "{w}")?;
                }
            } else {
                write!(f, "{w}")?;
            }
        }
        Ok(())
    }
}

/// Free derivative `d w / d x_j`.
pub fn fox_derivative(w: &GroupWord, j: usize) -> GroupRingElem {
    let mut out = GroupRingElem::zero();
    let mut prefix = GroupWord::identity();
    for &(g, e) in w.letters() {
        let next = prefix.mul(&GroupWord::from_letters(vec![(g, e)]));
        if g == j {
            if e > 0 {
                out.add_term(&prefix, 1);
            } else {
                out.add_term(&next, -1);
            }
        }
        prefix = next;
    }
    out
}
