//! Reduced words in a finitely generated free group.
//!
//! Words are stored run-length encoded over an explicit [`Alphabet`].
//! Every constructor reduces its input, so a [`FreeWord`] value is always
//! freely reduced and two words are equal in the group iff they are equal
//! as values (same alphabet, same runs).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeGroupError {
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("alphabets differ: {0} vs {1}")]
    AlphabetMismatch(String, String),
    #[error("no image provided for symbol `{0}`")]
    MissingImage(String),
    #[error("cannot parse free word: {0}")]
    Parse(String),
}

/// An ordered set of generator symbols, compared by content.
///
/// Cloning is cheap; the symbol table is shared.
#[derive(Debug, Clone)]
pub struct Alphabet {
    inner: Arc<AlphabetInner>,
}

#[derive(Debug)]
struct AlphabetInner {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.symbols == other.inner.symbols
    }
}
impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, FreeGroupError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(FreeGroupError::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet {
            inner: Arc::new(AlphabetInner { symbols, index }),
        })
    }

    pub fn len(&self) -> usize {
        self.inner.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.inner.symbols.iter().map(String::as_str)
    }

    pub fn symbol(&self, idx: usize) -> &str {
        &self.inner.symbols[idx]
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.inner.index.get(symbol).copied()
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.inner.index.contains_key(symbol)
    }

    fn describe(&self) -> String {
        format!("{{{}}}", self.inner.symbols.join(", "))
    }
}

/// A freely reduced word, stored as runs `(symbol, exponent)` with nonzero
/// exponents and no two adjacent runs on the same symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeWord {
    alphabet: Alphabet,
    runs: Vec<(u16, i64)>,
}

impl FreeWord {
    pub fn identity(alphabet: &Alphabet) -> Self {
        FreeWord {
            alphabet: alphabet.clone(),
            runs: Vec::new(),
        }
    }

    /// Single generator `symbol^exp`, reduced.
    pub fn generator(alphabet: &Alphabet, symbol: &str, exp: i64) -> Result<Self, FreeGroupError> {
        let idx = alphabet
            .index_of(symbol)
            .ok_or_else(|| FreeGroupError::UnknownSymbol(symbol.to_string()))?;
        let runs = if exp == 0 { vec![] } else { vec![(idx as u16, exp)] };
        Ok(FreeWord {
            alphabet: alphabet.clone(),
            runs,
        })
    }

    /// Reduce a raw letter sequence. Exponents may be arbitrary; zero
    /// exponents are dropped.
    pub fn from_letters<'a, I>(alphabet: &Alphabet, letters: I) -> Result<Self, FreeGroupError>
    where
        I: IntoIterator<Item = (&'a str, i64)>,
    {
        let mut w = FreeWord::identity(alphabet);
        for (sym, exp) in letters {
            let idx = alphabet
                .index_of(sym)
                .ok_or_else(|| FreeGroupError::UnknownSymbol(sym.to_string()))?;
            w.push_run(idx as u16, exp);
        }
        Ok(w)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Word length counted in letters (sum of |exponent| over runs).
    pub fn len(&self) -> usize {
        self.runs.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Runs as `(symbol, exponent)` pairs.
    pub fn runs(&self) -> impl Iterator<Item = (&str, i64)> {
        self.runs.iter().map(|&(s, e)| (self.alphabet.symbol(s as usize), e))
    }

    /// Individual letters `(symbol, ±1)`, expanded from runs.
    pub fn letters(&self) -> impl Iterator<Item = (&str, i64)> {
        self.runs.iter().flat_map(|&(s, e)| {
            let sign = if e > 0 { 1 } else { -1 };
            std::iter::repeat_n((self.alphabet.symbol(s as usize), sign), e.unsigned_abs() as usize)
        })
    }

    /// Net exponent of `symbol` (sum over all runs).
    pub fn exponent_sum(&self, symbol: &str) -> i64 {
        match self.alphabet.index_of(symbol) {
            Some(idx) => self
                .runs
                .iter()
                .filter(|&&(s, _)| s as usize == idx)
                .map(|&(_, e)| e)
                .sum(),
            None => 0,
        }
    }

    fn push_run(&mut self, sym: u16, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some(&mut (s, ref mut e)) if s == sym => {
                *e += exp;
                if *e == 0 {
                    self.runs.pop();
                }
            }
            _ => self.runs.push((sym, exp)),
        }
    }

    fn check_same_alphabet(&self, other: &FreeWord) -> Result<(), FreeGroupError> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(FreeGroupError::AlphabetMismatch(
                self.alphabet.describe(),
                other.alphabet.describe(),
            ))
        }
    }

    pub fn mul(&self, other: &FreeWord) -> Result<FreeWord, FreeGroupError> {
        self.check_same_alphabet(other)?;
        let mut out = self.clone();
        for &(s, e) in &other.runs {
            out.push_run(s, e);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            alphabet: self.alphabet.clone(),
            runs: self.runs.iter().rev().map(|&(s, e)| (s, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut result = FreeWord::identity(&self.alphabet);
        let mut sq = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&sq).expect("same alphabet");
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq).expect("same alphabet");
            }
        }
        result
    }

    /// Conjugate `self` by `by`: returns `by · self · by⁻¹`.
    pub fn conjugate_by(&self, by: &FreeWord) -> Result<FreeWord, FreeGroupError> {
        by.mul(self)?.mul(&by.inverse())
    }

    /// Apply the homomorphism determined by `images` (one image per alphabet
    /// symbol, all over a common target alphabet).
    pub fn substitute(
        &self,
        images: &HashMap<String, FreeWord>,
    ) -> Result<FreeWord, FreeGroupError> {
        let mut by_index: Vec<Option<&FreeWord>> = vec![None; self.alphabet.len()];
        let mut target: Option<&Alphabet> = None;
        for sym in self.alphabet.symbols() {
            let img = images
                .get(sym)
                .ok_or_else(|| FreeGroupError::MissingImage(sym.to_string()))?;
            match target {
                None => target = Some(img.alphabet()),
                Some(t) => {
                    if *t != *img.alphabet() {
                        return Err(FreeGroupError::AlphabetMismatch(
                            t.describe(),
                            img.alphabet().describe(),
                        ));
                    }
                }
            }
            by_index[self.alphabet.index_of(sym).unwrap()] = Some(img);
        }
        let target = match target {
            Some(t) => t.clone(),
            // Empty alphabet: the only word is the identity over itself.
            None => self.alphabet.clone(),
        };
        let images_vec: Vec<FreeWord> = by_index
            .into_iter()
            .map(|o| o.expect("image present").clone())
            .collect();
        Ok(self.substitute_indexed(&images_vec, &target))
    }

    /// Fast path: images indexed by symbol position in `self.alphabet`.
    pub(crate) fn substitute_indexed(&self, images: &[FreeWord], target: &Alphabet) -> FreeWord {
        let mut out = FreeWord::identity(target);
        for &(s, e) in &self.runs {
            let img = &images[s as usize];
            let powered = img.pow(e);
            for &(ts, te) in &powered.runs {
                out.push_run(ts, te);
            }
        }
        out
    }

    /// Parse the whitespace-separated syntax emitted by `Display`:
    /// tokens `sym` or `sym^k`; `1` (or an empty string) is the identity.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<FreeWord, FreeGroupError> {
        let mut letters: Vec<(&str, i64)> = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (sym, exp) = match tok.rsplit_once('^') {
                Some((sym, exp_str)) => {
                    let exp: i64 = exp_str
                        .parse()
                        .map_err(|_| FreeGroupError::Parse(format!("bad exponent in `{tok}`")))?;
                    (sym, exp)
                }
                None => (tok, 1),
            };
            if sym.is_empty() {
                return Err(FreeGroupError::Parse(format!("empty symbol in `{tok}`")));
            }
            letters.push((sym, exp));
        }
        FreeWord::from_letters(alphabet, letters)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (sym, e) in self.runs() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{e}")?;
            }
        }
        Ok(())
    }
}
