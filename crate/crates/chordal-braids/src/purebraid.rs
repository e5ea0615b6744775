//! The colored braid group `P(I)` on an arbitrary finite ordered index set.
//!
//! Elements are words in the standard generators `A[i,j]` (strand `j` takes
//! one full turn around strand `i`). Equality of words is decided through the
//! Artin action on a free group with one generator per strand, which is
//! faithful. The action of each generator is assembled by composing
//! half-twist substitutions, never copied from a relation table.
//!
//! Strand-forgetting homomorphisms, generator-inclusion sections, kernel
//! coordinates for the free kernel of a single forgetting map, and Artin
//! combing live here as well. Every kernel rewrite is verified against the
//! Artin oracle before it is returned.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::sync::Arc;

use serde_json::Value;
use thiserror::Error;

use crate::freegroup::{Alphabet, FreeWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("bad strand index: {0}")]
    BadIndex(String),
    #[error("index sets differ: {0} vs {1}")]
    IndexSetMismatch(String, String),
    #[error("{0} is not an ordered subset of {1}")]
    NotASubset(String, String),
    #[error("word is not in the kernel of forgetting strand `{0}`")]
    NotInKernel(String),
    #[error("step budget exhausted while combing")]
    BudgetExceeded,
    #[error("cannot parse braid word: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

type Result<T> = std::result::Result<T, BraidError>;

/// An ordered set of strand labels. The order is part of the data: it fixes
/// the meaning of the generators. Cloning is cheap.
#[derive(Debug, Clone)]
pub struct IndexSet {
    labels: Arc<Vec<String>>,
}

impl PartialEq for IndexSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}
impl Eq for IndexSet {}

impl IndexSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(BraidError::BadIndex(format!("duplicate strand `{l}`")));
            }
        }
        Ok(IndexSet {
            labels: Arc::new(labels),
        })
    }

    /// Strands labeled `1..=n`.
    pub fn strands(n: usize) -> Self {
        IndexSet {
            labels: Arc::new((1..=n).map(|i| i.to_string()).collect()),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    pub fn label(&self, pos: usize) -> &str {
        &self.labels[pos]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.position(label).is_some()
    }

    /// The subset consisting of `keep`, in this set's order.
    pub fn subset<'a, I>(&self, keep: I) -> Result<IndexSet>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut positions = Vec::new();
        for l in keep {
            match self.position(l) {
                Some(p) => positions.push(p),
                None => return Err(BraidError::BadIndex(format!("unknown strand `{l}`"))),
            }
        }
        positions.sort_unstable();
        positions.dedup();
        IndexSet::new(positions.into_iter().map(|p| self.labels[p].clone()))
    }

    pub fn without(&self, label: &str) -> Result<IndexSet> {
        if !self.contains(label) {
            return Err(BraidError::BadIndex(format!("unknown strand `{label}`")));
        }
        IndexSet::new(self.labels.iter().filter(|l| *l != label).cloned())
    }

    /// True iff `self`'s labels appear within `other` in the same order.
    pub fn is_ordered_subset_of(&self, other: &IndexSet) -> bool {
        let mut it = other.labels.iter();
        self.labels
            .iter()
            .all(|l| it.by_ref().any(|m| m == l))
    }

    fn describe(&self) -> String {
        format!("{{{}}}", self.labels.join(", "))
    }

    /// Alphabet with one free generator `x[label]` per strand.
    pub fn strand_alphabet(&self) -> Alphabet {
        Alphabet::new(self.labels.iter().map(|l| format!("x[{l}]"))).expect("labels are distinct")
    }

    /// Canonical generator name for the pair `{a, b}`, lower-ranked first.
    pub fn pair_symbol(&self, a: &str, b: &str) -> Result<String> {
        let (lo, hi) = self.pair_positions(a, b)?;
        Ok(format!("A[{},{}]", self.labels[lo], self.labels[hi]))
    }

    fn pair_positions(&self, a: &str, b: &str) -> Result<(usize, usize)> {
        let pa = self
            .position(a)
            .ok_or_else(|| BraidError::BadIndex(format!("unknown strand `{a}`")))?;
        let pb = self
            .position(b)
            .ok_or_else(|| BraidError::BadIndex(format!("unknown strand `{b}`")))?;
        if pa == pb {
            return Err(BraidError::BadIndex(format!("strands `{a}` and `{b}` coincide")));
        }
        Ok((pa.min(pb), pa.max(pb)))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// One generator occurrence `A[lo,hi]^sign`, by strand position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Factor {
    lo: u16,
    hi: u16,
    sign: i8,
}

/// A word in the generators of `P(I)`. Words are not normalized on
/// construction; equality of group elements is [`BraidWord::equal`],
/// normalization is [`comb`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    index: IndexSet,
    factors: Vec<Factor>,
}

impl BraidWord {
    pub fn identity(index: &IndexSet) -> Self {
        BraidWord {
            index: index.clone(),
            factors: Vec::new(),
        }
    }

    /// The generator `A[i,j] = A[j,i]`.
    pub fn generator(index: &IndexSet, i: &str, j: &str) -> Result<Self> {
        let (lo, hi) = index.pair_positions(i, j)?;
        Ok(BraidWord {
            index: index.clone(),
            factors: vec![Factor {
                lo: lo as u16,
                hi: hi as u16,
                sign: 1,
            }],
        })
    }

    /// Word from `(i, j, exponent)` runs.
    pub fn from_pairs<'a, I>(index: &IndexSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str, i64)>,
    {
        let mut w = BraidWord::identity(index);
        for (i, j, e) in pairs {
            let (lo, hi) = index.pair_positions(i, j)?;
            let sign = if e >= 0 { 1 } else { -1 };
            for _ in 0..e.unsigned_abs() {
                w.factors.push(Factor {
                    lo: lo as u16,
                    hi: hi as u16,
                    sign,
                });
            }
        }
        Ok(w)
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factors as `(lo_label, hi_label, sign)`.
    pub fn factors(&self) -> impl Iterator<Item = (&str, &str, i8)> {
        self.factors.iter().map(|f| {
            (
                self.index.label(f.lo as usize),
                self.index.label(f.hi as usize),
                f.sign,
            )
        })
    }

    fn check_same_index(&self, other: &BraidWord) -> Result<()> {
        if self.index == other.index {
            Ok(())
        } else {
            Err(BraidError::IndexSetMismatch(
                self.index.describe(),
                other.index.describe(),
            ))
        }
    }

    pub fn mul(&self, other: &BraidWord) -> Result<BraidWord> {
        self.check_same_index(other)?;
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Ok(BraidWord {
            index: self.index.clone(),
            factors,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            index: self.index.clone(),
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| Factor { sign: -f.sign, ..*f })
                .collect(),
        }
    }

    /// Cancel adjacent inverse pairs. Same group element, shorter word.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<Factor> = Vec::with_capacity(self.factors.len());
        for &f in &self.factors {
            match stack.last() {
                Some(&g) if g.lo == f.lo && g.hi == f.hi && g.sign == -f.sign => {
                    stack.pop();
                }
                _ => stack.push(f),
            }
        }
        BraidWord {
            index: self.index.clone(),
            factors: stack,
        }
    }

    /// Net exponent of the generator at the pair `{a, b}`.
    pub fn exponent_sum(&self, a: &str, b: &str) -> Result<i64> {
        let (lo, hi) = self.index.pair_positions(a, b)?;
        Ok(self
            .factors
            .iter()
            .filter(|f| f.lo as usize == lo && f.hi as usize == hi)
            .map(|f| f.sign as i64)
            .sum())
    }

    /// The faithful Artin action of this word.
    pub fn artin_auto(&self) -> ArtinAuto {
        let alphabet = self.index.strand_alphabet();
        let n = self.index.len();
        let mut acc: Vec<FreeWord> = (0..n)
            .map(|i| FreeWord::generator(&alphabet, alphabet.symbol(i), 1).unwrap())
            .collect();
        let mut gen_cache: HashMap<Factor, Vec<FreeWord>> = HashMap::new();
        for f in &self.factors {
            let gen_images = gen_cache
                .entry(*f)
                .or_insert_with(|| generator_images(&alphabet, n, f))
                .clone();
            // acc := acc ∘ gen: x ↦ acc(gen(x))
            acc = gen_images
                .iter()
                .map(|img| img.substitute_indexed(&acc, &alphabet))
                .collect();
        }
        ArtinAuto {
            index: self.index.clone(),
            alphabet,
            images: acc,
        }
    }

    /// Word-problem oracle: compare Artin actions.
    pub fn equal(&self, other: &BraidWord) -> Result<bool> {
        self.check_same_index(other)?;
        Ok(self.artin_auto() == other.artin_auto())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_reduce().is_empty() || self.artin_auto().is_identity()
    }

    /// Strand-forgetting homomorphism onto `P(J)`: generators with a strand
    /// outside `J` map to the identity.
    pub fn forget(&self, j: &IndexSet) -> Result<BraidWord> {
        if !j.is_ordered_subset_of(&self.index) {
            return Err(BraidError::NotASubset(j.describe(), self.index.describe()));
        }
        let mut positions = vec![None; self.index.len()];
        for (new_pos, label) in j.labels().enumerate() {
            positions[self.index.position(label).unwrap()] = Some(new_pos as u16);
        }
        let factors = self
            .factors
            .iter()
            .filter_map(|f| match (positions[f.lo as usize], positions[f.hi as usize]) {
                (Some(lo), Some(hi)) => Some(Factor { lo, hi, sign: f.sign }),
                _ => None,
            })
            .collect();
        Ok(BraidWord {
            index: j.clone(),
            factors,
        })
    }

    /// Generator-inclusion section of [`BraidWord::forget`]: the same factors
    /// read in the larger index set.
    pub fn include(&self, i: &IndexSet) -> Result<BraidWord> {
        if !self.index.is_ordered_subset_of(i) {
            return Err(BraidError::NotASubset(self.index.describe(), i.describe()));
        }
        let map: Vec<u16> = self
            .index
            .labels()
            .map(|l| i.position(l).unwrap() as u16)
            .collect();
        let factors = self
            .factors
            .iter()
            .map(|f| Factor {
                lo: map[f.lo as usize],
                hi: map[f.hi as usize],
                sign: f.sign,
            })
            .collect();
        Ok(BraidWord {
            index: i.clone(),
            factors,
        })
    }

    /// Parse the syntax emitted by `Display`: whitespace-separated tokens
    /// `A[i,j]` or `A[i,j]^k`; `1` is the identity.
    pub fn parse(index: &IndexSet, text: &str) -> Result<BraidWord> {
        let mut pairs = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (body, exp) = match tok.rsplit_once('^') {
                Some((body, e)) => (
                    body,
                    e.parse::<i64>()
                        .map_err(|_| BraidError::Parse(format!("bad exponent in `{tok}`")))?,
                ),
                None => (tok, 1),
            };
            let inner = body
                .strip_prefix("A[")
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| BraidError::Parse(format!("expected A[i,j], got `{tok}`")))?;
            let (i, j) = inner
                .split_once(',')
                .ok_or_else(|| BraidError::Parse(format!("expected two strands in `{tok}`")))?;
            pairs.push((i.trim().to_string(), j.trim().to_string(), exp));
        }
        BraidWord::from_pairs(index, pairs.iter().map(|(i, j, e)| (i.as_str(), j.as_str(), *e)))
    }

    /// JSON form `[["i","j",e], ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.factors()
                .map(|(i, j, s)| {
                    Value::Array(vec![
                        Value::String(i.to_string()),
                        Value::String(j.to_string()),
                        Value::Number(s.into()),
                    ])
                })
                .collect(),
        )
    }

    pub fn from_json(index: &IndexSet, value: &Value) -> Result<BraidWord> {
        let arr = value
            .as_array()
            .ok_or_else(|| BraidError::Parse("expected an array of factors".into()))?;
        let mut pairs = Vec::new();
        for item in arr {
            let triple = item
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| BraidError::Parse("expected [i, j, exp] triples".into()))?;
            let i = triple[0]
                .as_str()
                .ok_or_else(|| BraidError::Parse("strand labels must be strings".into()))?;
            let j = triple[1]
                .as_str()
                .ok_or_else(|| BraidError::Parse("strand labels must be strings".into()))?;
            let e = triple[2]
                .as_i64()
                .ok_or_else(|| BraidError::Parse("exponent must be an integer".into()))?;
            pairs.push((i.to_string(), j.to_string(), e));
        }
        BraidWord::from_pairs(index, pairs.iter().map(|(i, j, e)| (i.as_str(), j.as_str(), *e)))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        // compress equal adjacent factors for readability; parse re-expands
        let mut runs: Vec<(Factor, i64)> = Vec::new();
        for &fac in &self.factors {
            match runs.last_mut() {
                Some((g, count)) if g.lo == fac.lo && g.hi == fac.hi && g.sign == fac.sign => {
                    *count += 1
                }
                _ => runs.push((fac, 1)),
            }
        }
        let mut first = true;
        for (fac, count) in runs {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let lo = self.index.label(fac.lo as usize);
            let hi = self.index.label(fac.hi as usize);
            let exp = fac.sign as i64 * count;
            if exp == 1 {
                write!(f, "A[{lo},{hi}]")?;
            } else {
                write!(f, "A[{lo},{hi}]^{exp}")?;
            }
        }
        Ok(())
    }
}

/// An automorphism of the free group on the strand generators, represented
/// by its images. Constructed only through [`BraidWord::artin_auto`], so it
/// is always a composition of generator actions.
#[derive(Debug, Clone)]
pub struct ArtinAuto {
    index: IndexSet,
    alphabet: Alphabet,
    images: Vec<FreeWord>,
}

impl PartialEq for ArtinAuto {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.images == other.images
    }
}
impl Eq for ArtinAuto {}

impl ArtinAuto {
    pub fn index_set(&self) -> &IndexSet {
        &self.index
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Image of the strand generator `x_label`.
    pub fn image(&self, label: &str) -> Option<&FreeWord> {
        self.index.position(label).map(|p| &self.images[p])
    }

    pub fn apply(&self, word: &FreeWord) -> FreeWord {
        word.substitute_indexed(&self.images, &self.alphabet)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, img)| {
            let mut runs = img.runs();
            matches!(
                (runs.next(), runs.next()),
                (Some((sym, 1)), None) if sym == self.alphabet.symbol(i)
            )
        })
    }
}

/// Substitution images of the half twist swapping positions `i`, `i+1`:
/// `x_i ↦ x_i x_{i+1} x_i⁻¹`, `x_{i+1} ↦ x_i` (inverted for `sign < 0`).
fn sigma_images(alphabet: &Alphabet, n: usize, i: usize, sign: i8) -> Vec<FreeWord> {
    let gen = |k: usize, e: i64| FreeWord::generator(alphabet, alphabet.symbol(k), e).unwrap();
    let mut images: Vec<FreeWord> = (0..n).map(|k| gen(k, 1)).collect();
    if sign > 0 {
        images[i] = gen(i, 1).mul(&gen(i + 1, 1)).unwrap().mul(&gen(i, -1)).unwrap();
        images[i + 1] = gen(i, 1);
    } else {
        images[i] = gen(i + 1, 1);
        images[i + 1] = gen(i + 1, -1).mul(&gen(i, 1)).unwrap().mul(&gen(i + 1, 1)).unwrap();
    }
    images
}

/// Images of the generator `A[lo,hi]^sign`, assembled by composing the
/// half-twist chain `σ_{hi-1} … σ_{lo+1} σ_lo² σ_{lo+1}⁻¹ … σ_{hi-1}⁻¹`.
fn generator_images(alphabet: &Alphabet, n: usize, f: &Factor) -> Vec<FreeWord> {
    let (lo, hi) = (f.lo as usize, f.hi as usize);
    let mut sigma_word: Vec<(usize, i8)> = Vec::new();
    for k in ((lo + 1)..hi).rev() {
        sigma_word.push((k, 1));
    }
    sigma_word.push((lo, f.sign));
    sigma_word.push((lo, f.sign));
    for k in (lo + 1)..hi {
        sigma_word.push((k, -1));
    }
    let mut acc: Vec<FreeWord> = (0..n)
        .map(|k| FreeWord::generator(alphabet, alphabet.symbol(k), 1).unwrap())
        .collect();
    for (i, sign) in sigma_word {
        let s = sigma_images(alphabet, n, i, sign);
        acc = s
            .iter()
            .map(|img| img.substitute_indexed(&acc, alphabet))
            .collect();
    }
    acc
}

/// Reads kernel coordinates off the Artin action.
///
/// For a fixed strand `v`, the kernel of `P(I) → P(I∖v)` is free on the
/// generators `y_t = A[t,v]`. For a kernel element `κ`, the Artin image of
/// `x_v` is a conjugate `R x_v R⁻¹`; erasing the `x_v` letters of `R` and
/// inverting yields a homomorphism into the free group on the remaining
/// strand generators. The images of the `y_t` under this map form a free
/// basis, inverted once per `(I, v)` by recorded Nielsen reduction, which
/// turns the reading into explicit kernel coordinates. Every published
/// rewrite is verified against the Artin oracle.
struct KernelReader {
    index: IndexSet,
    v: String,
    v_pos: usize,
    strand_alphabet: Alphabet,
    /// kernel generator alphabet, symbols `A[t,v]` for `t ∈ I∖v` in order
    y_alphabet: Alphabet,
    /// strand label for each `y_alphabet` symbol, aligned by position
    y_strands: Vec<String>,
    /// for each strand position of `I`, the expression of `x_u` as a word in
    /// the kernel-generator images (identity at `v`'s own position)
    x_in_basis: Vec<FreeWord>,
}

type ReaderKey = (Vec<String>, String);

thread_local! {
    static READER_CACHE: RefCell<HashMap<ReaderKey, Rc<KernelReader>>> =
        RefCell::new(HashMap::new());
}

fn reader_for(index: &IndexSet, v: &str) -> Result<Rc<KernelReader>> {
    let key = (index.labels().map(str::to_string).collect::<Vec<_>>(), v.to_string());
    if let Some(r) = READER_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return Ok(r);
    }
    let reader = Rc::new(KernelReader::build(index, v)?);
    READER_CACHE.with(|c| c.borrow_mut().insert(key, reader.clone()));
    Ok(reader)
}

impl KernelReader {
    fn build(index: &IndexSet, v: &str) -> Result<KernelReader> {
        let v_pos = index
            .position(v)
            .ok_or_else(|| BraidError::BadIndex(format!("unknown strand `{v}`")))?;
        let strand_alphabet = index.strand_alphabet();
        let others: Vec<String> = index.labels().filter(|l| *l != v).map(str::to_string).collect();
        let y_alphabet = Alphabet::new(
            others
                .iter()
                .map(|t| index.pair_symbol(t, v).expect("valid pair")),
        )
        .expect("pair symbols are distinct");

        // basis images b_t = Φ(A[t,v]) over the strand alphabet
        let mut basis = Vec::with_capacity(others.len());
        for t in &others {
            let y = BraidWord::generator(index, t, v)?;
            basis.push(phi_read(&y, v_pos, &strand_alphabet)?);
        }

        let x_in_basis = invert_free_basis(&strand_alphabet, v_pos, &basis, &y_alphabet)?;

        let reader = KernelReader {
            index: index.clone(),
            v: v.to_string(),
            v_pos,
            strand_alphabet,
            y_alphabet,
            y_strands: others,
            x_in_basis,
        };

        // verify the inversion against the oracle once per (I, v): the lift
        // of each expression must read back to the strand generator
        for (pos, expr) in reader.x_in_basis.iter().enumerate() {
            if pos == reader.v_pos {
                continue;
            }
            let lifted = reader.lift(expr)?;
            let back = phi_read(&lifted, reader.v_pos, &reader.strand_alphabet)?;
            let expected =
                FreeWord::generator(&reader.strand_alphabet, reader.strand_alphabet.symbol(pos), 1)
                    .expect("strand symbol");
            if back != expected {
                return Err(BraidError::Internal(format!(
                    "kernel basis inversion failed the oracle check at `{}`",
                    reader.strand_alphabet.symbol(pos)
                )));
            }
        }
        Ok(reader)
    }

    /// Kernel coordinates of `w` (which must lie in the kernel), by reading
    /// the Artin action. The caller is responsible for the membership check.
    fn read(&self, w: &BraidWord) -> Result<FreeWord> {
        self.read_from_auto(&w.artin_auto())
    }

    fn read_from_auto(&self, auto: &ArtinAuto) -> Result<FreeWord> {
        let target = phi_from_image(&auto.images[self.v_pos], self.v_pos, &self.strand_alphabet)?;
        Ok(target.substitute_indexed(&self.x_in_basis, &self.y_alphabet))
    }

    /// Read the free word over the kernel alphabet back as a braid word.
    fn lift(&self, word: &FreeWord) -> Result<BraidWord> {
        let mut out = BraidWord::identity(&self.index);
        for (sym, e) in word.runs() {
            let pos = self
                .y_alphabet
                .index_of(sym)
                .ok_or_else(|| BraidError::Internal(format!("foreign kernel symbol `{sym}`")))?;
            let gen = BraidWord::generator(&self.index, &self.y_strands[pos], &self.v)?;
            let gen = if e < 0 { gen.inverse() } else { gen };
            for _ in 0..e.unsigned_abs() {
                out = out.mul(&gen)?;
            }
        }
        Ok(out)
    }
}

/// `Φ`-reading: image of `x_v` under the Artin action is `R x_v R⁻¹`;
/// return the inverse of `R` with its `x_v` letters erased.
fn phi_read(w: &BraidWord, v_pos: usize, alphabet: &Alphabet) -> Result<FreeWord> {
    phi_from_image(&w.artin_auto().images[v_pos], v_pos, alphabet)
}

fn phi_from_image(img: &FreeWord, v_pos: usize, alphabet: &Alphabet) -> Result<FreeWord> {
    let conj = extract_conjugator(img, alphabet, v_pos)?;
    let erased = FreeWord::from_letters(
        alphabet,
        conj.letters()
            .filter(|(sym, _)| *sym != alphabet.symbol(v_pos))
            .collect::<Vec<_>>(),
    )
    .expect("same alphabet");
    Ok(erased.inverse())
}

/// Decompose a reduced conjugate of a single generator: `w = R x R⁻¹`.
fn extract_conjugator(w: &FreeWord, alphabet: &Alphabet, x_pos: usize) -> Result<FreeWord> {
    let letters: Vec<(&str, i64)> = w.letters().collect();
    if letters.len().is_multiple_of(2) {
        return Err(BraidError::Internal(
            "Artin image of a strand generator has even length".into(),
        ));
    }
    let mid = letters.len() / 2;
    if letters[mid] != (alphabet.symbol(x_pos), 1) {
        return Err(BraidError::Internal(
            "Artin image is not a conjugate of the strand generator".into(),
        ));
    }
    for k in 0..mid {
        let (s1, e1) = letters[k];
        let (s2, e2) = letters[letters.len() - 1 - k];
        if s1 != s2 || e1 != -e2 {
            return Err(BraidError::Internal(
                "Artin image is not symmetric around the strand generator".into(),
            ));
        }
    }
    Ok(FreeWord::from_letters(alphabet, letters[..mid].iter().copied()).expect("same alphabet"))
}

/// Invert a free basis by Nielsen reduction with recorded moves.
///
/// `basis[k]` is a word over `alphabet` avoiding the symbol at `v_pos`; the
/// returned vector gives, for every position of `alphabet`, the expression
/// of that generator as a word over `y_alphabet` (identity at `v_pos`).
fn invert_free_basis(
    alphabet: &Alphabet,
    v_pos: usize,
    basis: &[FreeWord],
    y_alphabet: &Alphabet,
) -> Result<Vec<FreeWord>> {
    let k = basis.len();
    let mut words: Vec<FreeWord> = basis.to_vec();
    let mut exprs: Vec<FreeWord> = (0..k)
        .map(|i| FreeWord::generator(y_alphabet, y_alphabet.symbol(i), 1).unwrap())
        .collect();

    loop {
        let mut improved = false;
        'outer: for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                for sign in [1i64, -1] {
                    let right = words[i].mul(&words[j].pow(sign)).unwrap();
                    if right.len() < words[i].len() {
                        words[i] = right;
                        exprs[i] = exprs[i].mul(&exprs[j].pow(sign)).unwrap();
                        improved = true;
                        continue 'outer;
                    }
                    let left = words[j].pow(sign).mul(&words[i]).unwrap();
                    if left.len() < words[i].len() {
                        words[i] = left;
                        exprs[i] = exprs[j].pow(sign).mul(&exprs[i]).unwrap();
                        improved = true;
                        continue 'outer;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }

    let mut x_in_basis: Vec<Option<FreeWord>> = vec![None; alphabet.len()];
    x_in_basis[v_pos] = Some(FreeWord::identity(y_alphabet));
    for i in 0..k {
        let mut runs = words[i].runs();
        let (sym, e) = match (runs.next(), runs.next()) {
            (Some((sym, e)), None) if e.abs() == 1 => (sym, e),
            _ => {
                return Err(BraidError::Internal(format!(
                    "kernel basis failed to Nielsen-reduce: stuck at `{}`",
                    words[i]
                )))
            }
        };
        let pos = alphabet.index_of(sym).unwrap();
        if x_in_basis[pos].is_some() {
            return Err(BraidError::Internal(
                "kernel basis reduction produced a repeated generator".into(),
            ));
        }
        x_in_basis[pos] = Some(exprs[i].pow(e));
    }
    let missing = x_in_basis.iter().position(Option::is_none);
    if let Some(p) = missing {
        return Err(BraidError::Internal(format!(
            "kernel basis does not generate: `{}` unreachable",
            alphabet.symbol(p)
        )));
    }
    Ok(x_in_basis.into_iter().map(Option::unwrap).collect())
}

/// Kernel coordinates with the forgotten strand defaulting to the largest
/// index of `I`. See [`kernel_coordinates_at`].
pub fn kernel_coordinates(w: &BraidWord) -> Result<FreeWord> {
    let index = w.index_set();
    if index.is_empty() {
        return Err(BraidError::BadIndex("empty index set has no strands".into()));
    }
    let m = index.label(index.len() - 1).to_string();
    kernel_coordinates_at(w, &m)
}

/// Rewrite `w` as a reduced word in the free kernel generators
/// `{A[t,v] : t ∈ I∖v}`, provided `forget(w, I∖v)` is trivial.
///
/// The coordinates are read directly off the Artin action of `w` and the
/// result is verified against the oracle: the lift of the returned word
/// must act exactly as `w` does. Push-through rewriting with conjugation
/// rules ([`kernel_coordinates_pushed`]) computes the same word and serves
/// as an independent cross-check; the direct reading is primary because its
/// cost is bounded by the Artin image of `w` itself, where pushing can blow
/// up exponentially on intermediate words.
pub fn kernel_coordinates_at(w: &BraidWord, v: &str) -> Result<FreeWord> {
    kernel_coordinates_budgeted(w, v, None)
}

pub fn kernel_coordinates_budgeted(
    w: &BraidWord,
    v: &str,
    budget: Option<u64>,
) -> Result<FreeWord> {
    let index = w.index_set().clone();
    let others = index.without(v)?;
    if !w.forget(&others)?.is_trivial() {
        return Err(BraidError::NotInKernel(v.to_string()));
    }
    let reader = reader_for(&index, v)?;
    let auto = w.artin_auto();
    if let Some(limit) = budget {
        let work: u64 = auto.images.iter().map(|img| img.len() as u64).sum();
        if work > limit {
            return Err(BraidError::BudgetExceeded);
        }
    }
    let word = reader.read_from_auto(&auto)?;
    let lifted = reader.lift(&word)?;
    if lifted.artin_auto() != auto {
        return Err(BraidError::Internal(
            "kernel reading failed the final oracle check".into(),
        ));
    }
    Ok(word)
}

/// Coordinate reading without the final end-to-end oracle pass. The reader
/// itself is verified at construction, and callers are expected to verify
/// the enclosing decomposition (the Artin image of an isolated kernel word
/// can be orders of magnitude larger than the image of the product it came
/// from, so verifying the reassembled product is both sound and cheap).
pub(crate) fn kernel_coordinates_unverified(
    w: &BraidWord,
    v: &str,
    budget: Option<u64>,
) -> Result<FreeWord> {
    let index = w.index_set().clone();
    let others = index.without(v)?;
    if !w.forget(&others)?.is_trivial() {
        return Err(BraidError::NotInKernel(v.to_string()));
    }
    let reader = reader_for(&index, v)?;
    let auto = w.artin_auto();
    if let Some(limit) = budget {
        let work: u64 = auto.images.iter().map(|img| img.len() as u64).sum();
        if work > limit {
            return Err(BraidError::BudgetExceeded);
        }
    }
    reader.read_from_auto(&auto)
}

/// Kernel coordinates by pushing non-kernel letters out of the word,
/// conjugating the kernel part through them one letter at a time. Each
/// single-letter conjugation rule is generated from the Artin action and
/// verified against the braid oracle before use. Exponential on adversarial
/// words; kept as the independent second route to the same coordinates.
pub fn kernel_coordinates_pushed(w: &BraidWord, v: &str) -> Result<FreeWord> {
    let index = w.index_set().clone();
    let v_pos = index
        .position(v)
        .ok_or_else(|| BraidError::BadIndex(format!("unknown strand `{v}`")))? as u16;
    let others = index.without(v)?;
    if !w.forget(&others)?.is_trivial() {
        return Err(BraidError::NotInKernel(v.to_string()));
    }
    let reader = reader_for(&index, v)?;

    // position of A[t,v] in the kernel alphabet, per strand position of I
    let y_pos_of_strand: Vec<Option<usize>> = (0..index.len())
        .map(|p| {
            reader
                .y_strands
                .iter()
                .position(|t| index.position(t) == Some(p))
        })
        .collect();

    // conjugation images per non-kernel factor, generated and oracle-checked
    let mut rule_cache: HashMap<Factor, Vec<FreeWord>> = HashMap::new();
    let mut rules_for = |f: &Factor| -> Result<Vec<FreeWord>> {
        if let Some(r) = rule_cache.get(f) {
            return Ok(r.clone());
        }
        let g = BraidWord {
            index: index.clone(),
            factors: vec![*f],
        };
        let mut images = Vec::with_capacity(reader.y_alphabet.len());
        for t in reader.y_strands.clone() {
            let y = BraidWord::generator(&index, &t, v)?;
            let conj = g.mul(&y)?.mul(&g.inverse())?;
            let rule = reader.read(&conj)?;
            let lifted = reader.lift(&rule)?;
            if !lifted.equal(&conj)? {
                return Err(BraidError::Internal(format!(
                    "conjugation rule failed oracle check: {g} · {y} · {g}⁻¹ ≠ {rule}"
                )));
            }
            images.push(rule);
        }
        rule_cache.insert(*f, images.clone());
        Ok(images)
    };

    let mut kernel_part = FreeWord::identity(&reader.y_alphabet);
    for f in w.factors.iter().rev() {
        if f.lo == v_pos || f.hi == v_pos {
            let strand_pos = if f.lo == v_pos { f.hi } else { f.lo } as usize;
            let y_pos = y_pos_of_strand[strand_pos].expect("pair touches v");
            let y = FreeWord::generator(
                &reader.y_alphabet,
                reader.y_alphabet.symbol(y_pos),
                f.sign as i64,
            )
            .unwrap();
            kernel_part = y.mul(&kernel_part).unwrap();
        } else {
            let images = rules_for(f)?;
            kernel_part = kernel_part.substitute_indexed(&images, &reader.y_alphabet);
        }
    }

    let lifted = reader.lift(&kernel_part)?;
    if !lifted.equal(w)? {
        return Err(BraidError::Internal(
            "kernel rewrite failed the final oracle check".into(),
        ));
    }
    Ok(kernel_part)
}

/// Read a free word over kernel symbols `A[t,v]` back as a braid word.
pub fn lift_kernel_word(index: &IndexSet, v: &str, word: &FreeWord) -> Result<BraidWord> {
    let reader = reader_for(index, v)?;
    reader.lift(word)
}

/// One layer of a combed word: the coordinates of the kernel part at
/// `strand`, a reduced free word over the generators `A[t,strand]` with `t`
/// earlier than `strand`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombLayer {
    pub strand: String,
    pub word: FreeWord,
}

/// Artin combing: the iterated-semidirect-product coordinates of a pure
/// braid word, one free-group layer per strand from the second onward.
/// Reassembling the layers in index order recovers the element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombedForm {
    index: IndexSet,
    layers: Vec<CombLayer>,
}

impl CombedForm {
    pub fn index_set(&self) -> &IndexSet {
        &self.index
    }

    /// Layers in reassembly order (second strand first).
    pub fn layers(&self) -> &[CombLayer] {
        &self.layers
    }

    pub fn layer(&self, strand: &str) -> Option<&FreeWord> {
        self.layers.iter().find(|l| l.strand == strand).map(|l| &l.word)
    }

    pub fn is_identity(&self) -> bool {
        self.layers.iter().all(|l| l.word.is_identity())
    }
}

impl fmt::Display for CombedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.layers {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "{}: {}", l.strand, l.word)?;
        }
        Ok(())
    }
}

/// Comb a word by peeling the largest strand: split off the kernel part of
/// forgetting it, rewrite that part in kernel coordinates, recurse on the
/// rest.
pub fn comb(w: &BraidWord) -> Result<CombedForm> {
    comb_budgeted(w, None)
}

pub fn comb_budgeted(w: &BraidWord, budget: Option<u64>) -> Result<CombedForm> {
    let index = w.index_set().clone();
    let mut layers: Vec<CombLayer> = Vec::new();
    let mut current = w.clone();
    for k in (1..index.len()).rev() {
        let m = current.index_set().label(k).to_string();
        let prefix = current
            .index_set()
            .subset(current.index_set().labels().take(k).collect::<Vec<_>>())?;
        let rest = current.forget(&prefix)?;
        let included = rest.include(current.index_set())?;
        let kappa = included.inverse().mul(&current)?.free_reduce();
        let word = kernel_coordinates_unverified(&kappa, &m, budget)?;
        // oracle check of this peel: rest · lift(layer) must reassemble the
        // current word
        let lifted = lift_kernel_word(current.index_set(), &m, &word)?;
        if !included.mul(&lifted)?.equal(&current)? {
            return Err(BraidError::Internal(format!(
                "peel at strand `{m}` failed the oracle check"
            )));
        }
        layers.push(CombLayer { strand: m, word });
        current = rest;
    }
    layers.reverse();
    Ok(CombedForm { index, layers })
}

/// Reassemble a combed form: concatenate the layers in index order.
pub fn uncomb(c: &CombedForm) -> Result<BraidWord> {
    let mut out = BraidWord::identity(&c.index);
    for layer in &c.layers {
        let lifted = lift_kernel_word(&c.index, &layer.strand, &layer.word)?;
        out = out.mul(&lifted)?;
    }
    Ok(out)
}

/// Equality through combing. Combed layers are canonical coordinates, so
/// words are equal iff their layers agree; this must match [`BraidWord::equal`].
pub fn equal_via_comb(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    if u.index_set() != v.index_set() {
        return Err(BraidError::IndexSetMismatch(
            u.index_set().describe(),
            v.index_set().describe(),
        ));
    }
    Ok(comb(u)?.layers == comb(v)?.layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn i3() -> IndexSet {
        IndexSet::strands(3)
    }

    fn word(index: &IndexSet, text: &str) -> BraidWord {
        BraidWord::parse(index, text).unwrap()
    }

    fn random_word(rng: &mut StdRng, index: &IndexSet, max_len: usize) -> BraidWord {
        let n = index.len();
        let len = rng.gen_range(0..=max_len);
        let mut pairs = Vec::with_capacity(len);
        for _ in 0..len {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            pairs.push((
                index.label(i).to_string(),
                index.label(j).to_string(),
                sign,
            ));
        }
        BraidWord::from_pairs(index, pairs.iter().map(|(a, b, e)| (a.as_str(), b.as_str(), *e)))
            .unwrap()
    }

    #[test]
    fn generator_examples() {
        let idx = IndexSet::strands(2);
        let g = BraidWord::generator(&idx, "1", "2").unwrap();
        assert_eq!(g.to_string(), "A[1,2]");
        // canonical pair ordering
        let g = BraidWord::generator(&i3(), "3", "1").unwrap();
        assert_eq!(g.to_string(), "A[1,3]");
        assert!(BraidWord::generator(&idx, "1", "1").is_err());
    }

    #[test]
    fn artin_action_of_a12_is_conjugation_by_the_pair_product() {
        // composing the half twist x1 ↦ x1 x2 x1⁻¹, x2 ↦ x1 with itself
        let idx = IndexSet::strands(2);
        let auto = word(&idx, "A[1,2]").artin_auto();
        let alphabet = auto.alphabet().clone();
        let c = FreeWord::parse(&alphabet, "x[1] x[2]").unwrap();
        let x1 = FreeWord::parse(&alphabet, "x[1]").unwrap();
        let x2 = FreeWord::parse(&alphabet, "x[2]").unwrap();
        assert_eq!(*auto.image("1").unwrap(), x1.conjugate_by(&c).unwrap());
        assert_eq!(*auto.image("2").unwrap(), x2.conjugate_by(&c).unwrap());
    }

    #[test]
    fn artin_action_identity_and_cancellation() {
        let idx = i3();
        assert!(BraidWord::identity(&idx).artin_auto().is_identity());
        assert!(word(&idx, "A[1,2] A[1,2]^-1").artin_auto().is_identity());
    }

    #[test]
    fn artin_action_is_a_homomorphism() {
        let idx = i3();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let u = random_word(&mut rng, &idx, 6);
            let v = random_word(&mut rng, &idx, 6);
            let uv = u.mul(&v).unwrap();
            let lhs = uv.artin_auto();
            let u_auto = u.artin_auto();
            let v_auto = v.artin_auto();
            for label in idx.labels() {
                let expected = u_auto.apply(v_auto.image(label).unwrap());
                assert_eq!(*lhs.image(label).unwrap(), expected);
            }
        }
    }

    #[test]
    fn artin_action_fixes_boundary_word() {
        let idx = IndexSet::strands(4);
        let mut rng = StdRng::seed_from_u64(11);
        let alphabet = idx.strand_alphabet();
        let boundary = FreeWord::parse(&alphabet, "x[1] x[2] x[3] x[4]").unwrap();
        for _ in 0..40 {
            let w = random_word(&mut rng, &idx, 10);
            assert_eq!(w.artin_auto().apply(&boundary), boundary);
        }
    }

    #[test]
    fn equality_examples() {
        let idx = i3();
        // generators at overlapping pairs do not commute
        assert!(!word(&idx, "A[1,3] A[2,3]")
            .equal(&word(&idx, "A[2,3] A[1,3]"))
            .unwrap());
        // the full twist is central in P3
        let center = "A[1,2] A[1,3] A[2,3]";
        let lhs = word(&idx, &format!("{center} A[1,2]"));
        let rhs = word(&idx, &format!("A[1,2] {center}"));
        assert!(lhs.equal(&rhs).unwrap());
        // w · w⁻¹ is trivial
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..20 {
            let w = random_word(&mut rng, &idx, 8);
            assert!(w.mul(&w.inverse()).unwrap().equal(&BraidWord::identity(&idx)).unwrap());
        }
    }

    #[test]
    fn full_twist_expressions_agree() {
        // A12·A13·A23 = A13·A23·A12 = A23·A12·A13 in P3
        let idx = i3();
        let a = word(&idx, "A[1,2] A[1,3] A[2,3]");
        let b = word(&idx, "A[1,3] A[2,3] A[1,2]");
        let c = word(&idx, "A[2,3] A[1,2] A[1,3]");
        assert!(a.equal(&b).unwrap());
        assert!(b.equal(&c).unwrap());
    }

    #[test]
    fn forget_examples() {
        let idx = i3();
        let j = idx.subset(["1", "2"]).unwrap();
        assert_eq!(
            word(&idx, "A[1,3] A[1,2]").forget(&j).unwrap().to_string(),
            "A[1,2]"
        );
        let w = word(&idx, "A[1,2] A[2,3]^-1");
        assert_eq!(w.forget(&idx).unwrap(), w);
        let singleton = idx.subset(["2"]).unwrap();
        assert!(word(&idx, "A[1,2] A[2,3] A[1,3]")
            .forget(&singleton)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn include_section_property() {
        let idx = i3();
        let j = idx.subset(["1", "2"]).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let w = random_word(&mut rng, &j, 8);
            assert_eq!(w.include(&idx).unwrap().forget(&j).unwrap(), w);
        }
        let empty = BraidWord::identity(&j);
        assert!(empty.include(&idx).unwrap().is_empty());
    }

    #[test]
    fn forget_is_functorial_and_homomorphic() {
        let idx = IndexSet::strands(4);
        let j = idx.subset(["1", "2", "4"]).unwrap();
        let k = idx.subset(["1", "4"]).unwrap();
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..30 {
            let w = random_word(&mut rng, &idx, 8);
            let two_step = w.forget(&j).unwrap().forget(&k).unwrap();
            let one_step = w.forget(&k).unwrap();
            assert!(two_step.equal(&one_step).unwrap());

            let u = random_word(&mut rng, &idx, 6);
            let prod = w.mul(&u).unwrap().forget(&j).unwrap();
            let factored = w.forget(&j).unwrap().mul(&u.forget(&j).unwrap()).unwrap();
            assert!(prod.equal(&factored).unwrap());
        }
    }

    #[test]
    fn kernel_coordinates_trivial_cases() {
        let idx = i3();
        // already written in kernel letters
        let w = word(&idx, "A[1,3] A[2,3]^-1");
        let coords = kernel_coordinates(&w).unwrap();
        assert_eq!(coords.to_string(), "A[1,3] A[2,3]^-1");
        // not in the kernel
        assert!(matches!(
            kernel_coordinates(&word(&idx, "A[1,2]")),
            Err(BraidError::NotInKernel(_))
        ));
    }

    #[test]
    fn kernel_coordinates_conjugation_last_strand() {
        // A12⁻¹ A13 A12 = A13 A23 A13 A23⁻¹ A13⁻¹, derived from the central
        // full twist of P3, not from the Artin action.
        let idx = i3();
        let w = word(&idx, "A[1,2]^-1 A[1,3] A[1,2]");
        let coords = kernel_coordinates(&w).unwrap();
        assert_eq!(coords.to_string(), "A[1,3] A[2,3] A[1,3] A[2,3]^-1 A[1,3]^-1");
    }

    #[test]
    fn kernel_coordinates_conjugation_middle_strand() {
        // A13 A12 A13⁻¹ = A12⁻¹ A23⁻¹ A12 A23 A12, derived from the central
        // full twist of P3. The forgotten strand sits between the others.
        let idx = i3();
        let w = word(&idx, "A[1,3] A[1,2] A[1,3]^-1");
        let coords = kernel_coordinates_at(&w, "2").unwrap();
        assert_eq!(
            coords.to_string(),
            "A[1,2]^-1 A[2,3]^-1 A[1,2] A[2,3] A[1,2]"
        );
    }

    #[test]
    fn kernel_coordinates_match_direct_reading() {
        let idx = i3();
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..30 {
            // manufacture kernel elements: conjugates of kernel generators
            let g = random_word(&mut rng, &idx, 4);
            let t = if rng.gen_bool(0.5) { "1" } else { "2" };
            let y = BraidWord::generator(&idx, t, "3").unwrap();
            let w = g.mul(&y).unwrap().mul(&g.inverse()).unwrap();
            let direct = kernel_coordinates_at(&w, "3").unwrap();
            let pushed = kernel_coordinates_pushed(&w, "3").unwrap();
            assert_eq!(pushed, direct);
        }
    }

    #[test]
    fn two_strand_group_is_infinite_cyclic() {
        let idx = IndexSet::strands(2);
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..30 {
            let w = random_word(&mut rng, &idx, 10);
            let c = comb(&w).unwrap();
            let e = w.exponent_sum("1", "2").unwrap();
            assert_eq!(c.layer("2").unwrap().exponent_sum("A[1,2]"), e);
            assert_eq!(c.layer("2").unwrap().len() as i64, e.abs());
        }
    }

    #[test]
    fn comb_examples() {
        let idx = i3();
        // A12 A13: kernel part A13, remaining A12
        let c = comb(&word(&idx, "A[1,2] A[1,3]")).unwrap();
        assert_eq!(c.layer("2").unwrap().to_string(), "A[1,2]");
        assert_eq!(c.layer("3").unwrap().to_string(), "A[1,3]");
        // identity word: all layers empty
        let c = comb(&BraidWord::identity(&idx)).unwrap();
        assert!(c.is_identity());
        // single generator lands in its own layer
        let c = comb(&word(&idx, "A[2,3]")).unwrap();
        assert!(c.layer("2").unwrap().is_identity());
        assert_eq!(c.layer("3").unwrap().to_string(), "A[2,3]");
    }

    #[test]
    fn comb_uncomb_round_trip() {
        let mut rng = StdRng::seed_from_u64(17);
        for n in 2..=4 {
            let idx = IndexSet::strands(n);
            for _ in 0..40 {
                let w = random_word(&mut rng, &idx, 12);
                let c = comb(&w).unwrap();
                let back = uncomb(&c).unwrap();
                assert!(back.equal(&w).unwrap());
            }
        }
    }

    #[test]
    fn comb_equality_agrees_with_artin_equality() {
        let idx = i3();
        let mut rng = StdRng::seed_from_u64(19);
        for _ in 0..60 {
            let u = random_word(&mut rng, &idx, 8);
            let v = if rng.gen_bool(0.3) {
                // same element, different word
                let t = random_word(&mut rng, &idx, 4);
                t.mul(&t.inverse()).unwrap().mul(&u).unwrap()
            } else {
                random_word(&mut rng, &idx, 8)
            };
            assert_eq!(
                equal_via_comb(&u, &v).unwrap(),
                u.equal(&v).unwrap()
            );
        }
    }

    #[test]
    fn comb_budget_is_enforced() {
        let idx = i3();
        let w = word(&idx, "A[1,2] A[1,3] A[2,3] A[1,2]^-1 A[1,3]^-1 A[2,3]^-1");
        assert!(matches!(
            comb_budgeted(&w, Some(1)),
            Err(BraidError::BudgetExceeded)
        ));
        assert!(comb_budgeted(&w, Some(1_000_000)).is_ok());
    }

    #[test]
    fn parse_display_round_trip() {
        let idx = i3();
        for text in ["1", "A[1,2]", "A[1,2]^-1 A[1,3]^2 A[2,3]"] {
            let w = word(&idx, text);
            assert_eq!(word(&idx, &w.to_string()), w);
        }
        let w = word(&idx, "A[1,2]^3");
        assert_eq!(w.len(), 3);
        assert!(BraidWord::parse(&idx, "B[1,2]").is_err());
        assert!(BraidWord::parse(&idx, "A[1,4]").is_err());
    }

    #[test]
    fn json_round_trip() {
        let idx = i3();
        let w = word(&idx, "A[1,2] A[2,3]^-1");
        let back = BraidWord::from_json(&idx, &w.to_json()).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn forget_rejects_non_subsets() {
        let idx = i3();
        let w = word(&idx, "A[1,2]");
        let foreign = IndexSet::new(["1", "5"]).unwrap();
        assert!(matches!(
            w.forget(&foreign),
            Err(BraidError::NotASubset(_, _))
        ));
        // order matters: a reordered subset is not an ordered subset
        let reordered = IndexSet::new(["2", "1"]).unwrap();
        assert!(matches!(
            w.forget(&reordered),
            Err(BraidError::NotASubset(_, _))
        ));
        assert!(matches!(
            w.include(&reordered),
            Err(BraidError::NotASubset(_, _))
        ));
    }

    #[test]
    fn index_set_mismatch_rejected() {
        let a = word(&i3(), "A[1,2]");
        let other = IndexSet::new(["1", "2", "4"]).unwrap();
        let b = word(&other, "A[1,2]");
        assert!(matches!(
            a.equal(&b),
            Err(BraidError::IndexSetMismatch(_, _))
        ));
    }
}
