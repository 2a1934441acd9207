//! The Sylow 2-subgroups of symmetric groups as iterated wreath products.
//!
//! `P_1` is trivial and `P_{2^k} = P_{2^{k−1}} ≀ C₂`. For general `n` the
//! Sylow subgroup is the direct product of the `P_{2^{k_i}}` over the binary
//! digits of `n`.
//!
//! Each level is stored as flat, index-addressed arrays. The irreducible
//! characters of `G ≀ C₂` are
//!
//! * `Ext(φ; b)`: the canonical extension of `φ × φ` twisted by the sign of
//!   the top `C₂` when `b = 1`, and
//! * `Ind(φ₁, φ₂)`: `(φ₁ × φ₂)↑` for `φ₁ ≠ φ₂` (unordered),
//!
//! and the conjugacy classes are
//!
//! * `Base{a, b}`: elements `(g₁, g₂; 1)` with `{[g₁], [g₂]} = {a, b}`, and
//! * `Outer{c}`: elements `(g₁, g₂; γ)` with `[g₁g₂] = c`; the
//!   representative `(h, 1; γ)` has every cycle of `h` doubled in length.
//!
//! Labels are ordered `Ext` before `Ind`, then lexicographically by their
//! sub-labels, so a label's index is a pure function of its structure.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::binary_expansion;
use crate::sym_chars::CycleType;

/// Default maximum wreath level (`P_32`).
pub const DEFAULT_LEVEL_CAP: u32 = 5;
/// Level 6 would have ~3.6·10⁸ classes; the cap can be lowered but not raised past this.
pub const MAX_LEVEL_CAP: u32 = 5;
/// Highest level whose full character table is materialised (230 × 230).
pub const MAX_DENSE_TABLE_LEVEL: u32 = 4;

/// Label for an irreducible character of `P_{2^k}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrrLabel {
    /// The trivial character of `P_1`.
    Trivial,
    /// `𝒳(φ; φ_b)`.
    Ext(Box<IrrLabel>, u8),
    /// `(φ₁ × φ₂)↑`, with `φ₁ < φ₂`.
    Ind(Box<IrrLabel>, Box<IrrLabel>),
}

impl IrrLabel {
    pub fn ext(sub: IrrLabel, bit: u8) -> Result<IrrLabel> {
        if bit > 1 {
            return Err(Error::invalid(format!("extension bit must be 0 or 1, got {bit}")));
        }
        Ok(IrrLabel::Ext(Box::new(sub), bit))
    }

    /// Builds an induced label, putting the pair in canonical order.
    pub fn ind(a: IrrLabel, b: IrrLabel) -> Result<IrrLabel> {
        if a.level() != b.level() {
            return Err(Error::invalid("induced pair mixes levels"));
        }
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(IrrLabel::Ind(Box::new(a), Box::new(b))),
            std::cmp::Ordering::Greater => Ok(IrrLabel::Ind(Box::new(b), Box::new(a))),
            std::cmp::Ordering::Equal => Err(Error::invalid("induced pair needs distinct characters")),
        }
    }

    /// The linear character `𝒳(i₁, …, i_k)`.
    pub fn linear(bits: &[u8]) -> Result<IrrLabel> {
        bits.iter().try_fold(IrrLabel::Trivial, |acc, &b| IrrLabel::ext(acc, b))
    }

    pub fn level(&self) -> u32 {
        match self {
            IrrLabel::Trivial => 0,
            IrrLabel::Ext(s, _) => s.level() + 1,
            IrrLabel::Ind(a, _) => a.level() + 1,
        }
    }

    /// `log₂` of the degree: `Ext` squares the degree, `Ind` doubles the product.
    pub fn degree_log2(&self) -> u32 {
        match self {
            IrrLabel::Trivial => 0,
            IrrLabel::Ext(s, _) => 2 * s.degree_log2(),
            IrrLabel::Ind(a, b) => a.degree_log2() + b.degree_log2() + 1,
        }
    }

    pub fn degree(&self) -> u128 {
        1u128 << self.degree_log2()
    }

    /// The bits `(i₁, …, i_k)` if this is a linear label.
    pub fn linear_bits(&self) -> Option<Vec<u8>> {
        match self {
            IrrLabel::Trivial => Some(Vec::new()),
            IrrLabel::Ext(s, b) => s.linear_bits().map(|mut v| {
                v.push(*b);
                v
            }),
            IrrLabel::Ind(..) => None,
        }
    }

    /// Product with a linear character of the same level.
    ///
    /// `𝒳(φ; b) · 𝒳(L; β) = 𝒳(φL; b + β)` and
    /// `(φ₁ × φ₂)↑ · 𝒳(L; β) = (φ₁L × φ₂L)↑`.
    pub fn twist(&self, linear: &IrrLabel) -> Result<IrrLabel> {
        match (self, linear) {
            (IrrLabel::Trivial, IrrLabel::Trivial) => Ok(IrrLabel::Trivial),
            (IrrLabel::Ext(s, b), IrrLabel::Ext(l, beta)) => IrrLabel::ext(s.twist(l)?, (b + beta) % 2),
            (IrrLabel::Ind(p, q), IrrLabel::Ext(l, _)) => IrrLabel::ind(p.twist(l)?, q.twist(l)?),
            _ => Err(Error::invalid("twist needs a linear label of the same level")),
        }
    }
}

impl fmt::Display for IrrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrLabel::Trivial => write!(f, "1"),
            IrrLabel::Ext(s, b) if **s == IrrLabel::Trivial => write!(f, "X({b})"),
            IrrLabel::Ext(s, b) => write!(f, "E({s};{b})"),
            IrrLabel::Ind(a, b) => write!(f, "I({a},{b})"),
        }
    }
}

impl fmt::Debug for IrrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for IrrLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for IrrLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<IrrLabel> {
        let mut p = LabelParser { src: s.as_bytes(), pos: 0 };
        let label = p.label()?;
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(label)
    }
}

struct LabelParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl LabelParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::invalid(format!("bad label at byte {}: {what}", self.pos))
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn bit(&mut self) -> Result<u8> {
        match self.src.get(self.pos) {
            Some(b'0') => {
                self.pos += 1;
                Ok(0)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(1)
            }
            _ => Err(self.error("expected a bit")),
        }
    }

    fn label(&mut self) -> Result<IrrLabel> {
        let head = *self.src.get(self.pos).ok_or_else(|| self.error("unexpected end"))?;
        self.pos += 1;
        match head {
            b'1' => Ok(IrrLabel::Trivial),
            b'X' => {
                self.eat(b'(')?;
                let b = self.bit()?;
                self.eat(b')')?;
                IrrLabel::ext(IrrLabel::Trivial, b)
            }
            b'E' => {
                self.eat(b'(')?;
                let s = self.label()?;
                self.eat(b';')?;
                let b = self.bit()?;
                self.eat(b')')?;
                if s == IrrLabel::Trivial {
                    return Err(self.error("level-1 labels are written X(b)"));
                }
                IrrLabel::ext(s, b)
            }
            b'I' => {
                self.eat(b'(')?;
                let a = self.label()?;
                self.eat(b',')?;
                let b = self.label()?;
                self.eat(b')')?;
                if a >= b {
                    return Err(self.error("induced pair must be distinct and in canonical order"));
                }
                IrrLabel::ind(a, b)
            }
            _ => Err(Error::invalid(format!("bad label at byte {}: unknown head", self.pos - 1))),
        }
    }
}

/// A linear character `𝒳(i₁, …, i_k)` of `P_{2^k}`, with `i₁` innermost.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct LinearLabel {
    bits: Vec<u8>,
}

impl LinearLabel {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::invalid("linear label bits must be 0 or 1"));
        }
        Ok(LinearLabel { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn level(&self) -> u32 {
        self.bits.len() as u32
    }

    /// Index in canonical label order: the bits read as a binary number.
    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| 2 * acc + b as usize)
    }

    pub fn to_irr_label(&self) -> IrrLabel {
        IrrLabel::linear(&self.bits).expect("bits validated on construction")
    }
}

impl fmt::Display for LinearLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: Vec<String> = self.bits.iter().map(u8::to_string).collect();
        write!(f, "({})", bits.join(","))
    }
}

impl TryFrom<&IrrLabel> for LinearLabel {
    type Error = Error;

    fn try_from(l: &IrrLabel) -> Result<Self> {
        l.linear_bits().map(|bits| LinearLabel { bits }).ok_or_else(|| Error::invalid(format!("{l} is not linear")))
    }
}

/// An irreducible character of `P_n = P_{2^{k₁}} × ⋯ × P_{2^{k_t}}`, one
/// factor per binary digit of `n` in decreasing exponent order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProductIrrLabel(pub Vec<IrrLabel>);

impl ProductIrrLabel {
    pub fn factors(&self) -> &[IrrLabel] {
        &self.0
    }

    pub fn degree_log2(&self) -> u32 {
        self.0.iter().map(IrrLabel::degree_log2).sum()
    }

    pub fn degree(&self) -> u128 {
        1u128 << self.degree_log2()
    }

    pub fn from_linear(factors: &[LinearLabel]) -> Self {
        ProductIrrLabel(factors.iter().map(LinearLabel::to_irr_label).collect())
    }

    /// Factor-wise [`IrrLabel::twist`].
    pub fn twist(&self, linear: &ProductIrrLabel) -> Result<ProductIrrLabel> {
        if self.0.len() != linear.0.len() {
            return Err(Error::invalid("twist needs the same number of factors"));
        }
        self.0.iter().zip(&linear.0).map(|(a, b)| a.twist(b)).collect::<Result<_>>().map(ProductIrrLabel)
    }
}

impl fmt::Display for ProductIrrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for ProductIrrLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for ProductIrrLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(" x ").map(str::parse).collect::<Result<_>>().map(ProductIrrLabel)
    }
}

/// Structural description of a conjugacy class of `P_{2^k}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ClassDescriptor {
    /// The single class of `P_1`.
    Identity,
    /// Base-group class, stored with `a ≤ b` in class order.
    Base(Box<ClassDescriptor>, Box<ClassDescriptor>),
    /// Outer-coset class, keyed by the class of `g₁g₂`.
    Outer(Box<ClassDescriptor>),
}

impl ClassDescriptor {
    pub fn level(&self) -> u32 {
        match self {
            ClassDescriptor::Identity => 0,
            ClassDescriptor::Base(a, _) => a.level() + 1,
            ClassDescriptor::Outer(c) => c.level() + 1,
        }
    }
}

impl fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassDescriptor::Identity => write!(f, "e"),
            ClassDescriptor::Base(a, b) => write!(f, "B({a},{b})"),
            ClassDescriptor::Outer(c) => write!(f, "O({c})"),
        }
    }
}

/// A conjugacy class with its size and cycle type in `𝔖_{2^k}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConjClassData {
    pub descriptor: ClassDescriptor,
    pub size: u128,
    pub cycle_type: CycleType,
}

/// Exact character value, by structural recursion on label and class.
pub fn char_value(label: &IrrLabel, class: &ClassDescriptor) -> Result<i64> {
    if label.level() != class.level() {
        return Err(Error::invalid(format!(
            "label level {} does not match class level {}",
            label.level(),
            class.level()
        )));
    }
    Ok(value_rec(label, class))
}

fn value_rec(label: &IrrLabel, class: &ClassDescriptor) -> i64 {
    use ClassDescriptor as C;
    use IrrLabel as L;
    match (label, class) {
        (L::Trivial, _) => 1,
        (L::Ext(s, _), C::Base(x, y)) => value_rec(s, x) * value_rec(s, y),
        (L::Ext(s, b), C::Outer(z)) => sign(*b) * value_rec(s, z),
        (L::Ind(p, q), C::Base(x, y)) => value_rec(p, x) * value_rec(q, y) + value_rec(p, y) * value_rec(q, x),
        (L::Ind(..), C::Outer(_)) => 0,
        (_, C::Identity) => unreachable!("levels checked by caller"),
    }
}

fn sign(bit: u8) -> i64 {
    if bit == 0 {
        1
    } else {
        -1
    }
}

/// `α_{2^t}`: 0, 0, 1 for `t = 0, 1, 2` and `2^{t−2} + 2^{t−3} − 1` beyond.
pub fn alpha_pow2(t: u32) -> u32 {
    match t {
        0 | 1 => 0,
        2 => 1,
        _ => (1 << (t - 2)) + (1 << (t - 3)) - 1,
    }
}

/// `α_n`, additive over the binary digits of `n`.
pub fn alpha(n: usize) -> Result<u32> {
    Ok(binary_expansion(n)?.exponents().iter().map(|&k| alpha_pow2(k)).sum())
}

/// `cd(P_n) = {2^j : 0 ≤ j ≤ α_n}`.
pub fn char_degrees(n: usize) -> Result<Vec<u128>> {
    Ok((0..=alpha(n)?).map(|j| 1u128 << j).collect())
}

/// `log₂ |P_n| = Σ (2^{k_i} − 1) = n − popcount(n)`.
pub fn sylow_order_log2(n: usize) -> Result<u32> {
    let e = binary_expansion(n)?;
    Ok(e.exponents().iter().map(|&k| (1u32 << k) - 1).sum())
}

pub fn sylow_order(n: usize) -> Result<u128> {
    let log = sylow_order_log2(n)?;
    if log >= 128 {
        return Err(Error::invalid(format!("|P_{n}| = 2^{log} does not fit in 128 bits")));
    }
    Ok(1u128 << log)
}

/// Number of labels (equivalently classes) at each level: `c₀ = 1`,
/// `c_k = 2c + c(c − 1)/2`.
pub fn level_size(k: u32) -> u64 {
    (0..k).fold(1u64, |c, _| 2 * c + c * (c - 1) / 2)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum LabelNode {
    Trivial,
    Ext { sub: u32, bit: u8 },
    Ind { a: u32, b: u32 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum ClassNode {
    Identity,
    Base { a: u32, b: u32 },
    Outer { c: u32 },
}

/// One level of the tower in flat form.
pub struct Level {
    k: u32,
    labels: Vec<LabelNode>,
    degree_log2: Vec<u32>,
    classes: Vec<ClassNode>,
    class_sizes: Vec<u128>,
    cycle_types: Vec<CycleType>,
    order: u128,
}

impl Level {
    fn base() -> Level {
        Level {
            k: 0,
            labels: vec![LabelNode::Trivial],
            degree_log2: vec![0],
            classes: vec![ClassNode::Identity],
            class_sizes: vec![1],
            cycle_types: vec![CycleType::identity(1)],
            order: 1,
        }
    }

    fn next(prev: &Level) -> Result<Level> {
        let m = prev.labels.len() as u32;
        let mut labels = Vec::new();
        let mut degree_log2 = Vec::new();
        for sub in 0..m {
            for bit in 0..2u8 {
                labels.push(LabelNode::Ext { sub, bit });
                degree_log2.push(2 * prev.degree_log2[sub as usize]);
            }
        }
        for a in 0..m {
            for b in a + 1..m {
                labels.push(LabelNode::Ind { a, b });
                degree_log2.push(prev.degree_log2[a as usize] + prev.degree_log2[b as usize] + 1);
            }
        }
        let mut classes = Vec::new();
        let mut class_sizes = Vec::new();
        let mut cycle_types = Vec::new();
        for a in 0..m {
            for b in a..m {
                let (sa, sb) = (prev.class_sizes[a as usize], prev.class_sizes[b as usize]);
                classes.push(ClassNode::Base { a, b });
                class_sizes.push(if a == b { sa * sa } else { 2 * sa * sb });
                cycle_types.push(CycleType::concat([&prev.cycle_types[a as usize], &prev.cycle_types[b as usize]]));
            }
        }
        for c in 0..m {
            classes.push(ClassNode::Outer { c });
            class_sizes.push(prev.order * prev.class_sizes[c as usize]);
            cycle_types.push(prev.cycle_types[c as usize].doubled());
        }
        let order = 2 * prev.order * prev.order;
        let level = Level { k: prev.k + 1, labels, degree_log2, classes, class_sizes, cycle_types, order };
        let total: u128 = level.class_sizes.iter().sum();
        if total != order {
            return Err(Error::consistency(format!(
                "class sizes at level {} sum to {total}, expected {order}",
                level.k
            )));
        }
        if level.labels.len() != level.classes.len() {
            return Err(Error::consistency("label and class counts differ"));
        }
        Ok(level)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn class_sizes(&self) -> &[u128] {
        &self.class_sizes
    }

    pub fn cycle_types(&self) -> &[CycleType] {
        &self.cycle_types
    }

    pub fn degree_log2(&self) -> &[u32] {
        &self.degree_log2
    }

    /// Indices of the `2^k` linear labels, which come first in label order.
    pub fn linear_count(&self) -> usize {
        1 << self.k
    }
}

fn pair_index(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(a < b);
    a * m - a * (a + 1) / 2 + (b - a - 1)
}

fn base_index(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(a <= b);
    a * m - a * a.saturating_sub(1) / 2 + (b - a)
}

/// A full character table of one level, rows indexed by labels and columns
/// by classes.
pub struct CharTable {
    level: Arc<Level>,
    values: Vec<i64>,
}

impl CharTable {
    fn base() -> CharTable {
        CharTable { level: Arc::new(Level::base()), values: vec![1] }
    }

    fn next(prev: &CharTable, level: Arc<Level>) -> CharTable {
        let mut values = Vec::with_capacity(level.len() * level.len());
        for &node in &level.labels {
            values.extend(level.classes.iter().map(|&class| node_value(prev, node, class)));
        }
        CharTable { level, values }
    }

    pub fn k(&self) -> u32 {
        self.level.k
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn len(&self) -> usize {
        self.level.len()
    }

    pub fn is_empty(&self) -> bool {
        self.level.is_empty()
    }

    /// Value of label `i` on class `j`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.values[i * self.level.len() + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        let n = self.level.len();
        &self.values[i * n..(i + 1) * n]
    }

    /// Both orthogonality relations and `Σ χ(1)² = |G|`, in exact arithmetic.
    pub fn check(&self) -> Result<()> {
        let n = self.len();
        let order = self.level.order as i128;
        let sizes = &self.level.class_sizes;
        let deg_sq: i128 = (0..n).map(|i| (self.get(i, 0) as i128).pow(2)).sum();
        if deg_sq != order {
            return Err(Error::consistency(format!("level {}: Σ degree² = {deg_sq} ≠ {order}", self.k())));
        }
        for i in 0..n {
            if self.get(i, 0) != 1i64 << self.level.degree_log2[i] {
                return Err(Error::consistency(format!("level {}: label {i} has wrong degree", self.k())));
            }
        }
        for i in 0..n {
            let ri = self.row(i);
            for j in i..n {
                let rj = self.row(j);
                let s: i128 = (0..n).map(|c| sizes[c] as i128 * ri[c] as i128 * rj[c] as i128).sum();
                let want = if i == j { order } else { 0 };
                if s != want {
                    return Err(Error::consistency(format!(
                        "level {}: rows {i}, {j} have inner product {s}, expected {want}",
                        self.k()
                    )));
                }
            }
        }
        for (c, &size) in sizes.iter().enumerate() {
            for d in c..n {
                let s: i128 = (0..n).map(|i| self.get(i, c) as i128 * self.get(i, d) as i128).sum();
                let want = if c == d { order / size as i128 } else { 0 };
                if s != want || (c == d && order % size as i128 != 0) {
                    return Err(Error::consistency(format!(
                        "level {}: columns {c}, {d} have inner product {s}, expected {want}",
                        self.k()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Lazily built levels and character tables, each constructed once.
pub struct WreathTower {
    cap: u32,
    levels: Vec<OnceLock<Result<Arc<Level>>>>,
    tables: Vec<OnceLock<Result<Arc<CharTable>>>>,
}

impl Default for WreathTower {
    fn default() -> Self {
        WreathTower::new(DEFAULT_LEVEL_CAP).expect("default cap is valid")
    }
}

impl WreathTower {
    pub fn new(cap: u32) -> Result<Self> {
        if cap > MAX_LEVEL_CAP {
            return Err(Error::invalid(format!("level cap {cap} exceeds the supported maximum {MAX_LEVEL_CAP}")));
        }
        Ok(WreathTower {
            cap,
            levels: (0..=MAX_LEVEL_CAP).map(|_| OnceLock::new()).collect(),
            tables: (0..=MAX_DENSE_TABLE_LEVEL).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    fn check_cap(&self, k: u32) -> Result<()> {
        if k > self.cap {
            Err(Error::LevelCap { level: k, cap: self.cap })
        } else {
            Ok(())
        }
    }

    pub fn level(&self, k: u32) -> Result<Arc<Level>> {
        self.check_cap(k)?;
        self.levels[k as usize]
            .get_or_init(|| {
                if k == 0 {
                    Ok(Arc::new(Level::base()))
                } else {
                    let prev = self.level(k - 1)?;
                    Level::next(&prev).map(Arc::new)
                }
            })
            .clone()
    }

    /// Full character table, checked for orthogonality on construction.
    pub fn char_table(&self, k: u32) -> Result<Arc<CharTable>> {
        self.check_cap(k)?;
        if k > MAX_DENSE_TABLE_LEVEL {
            return Err(Error::invalid(format!(
                "dense character tables are limited to level {MAX_DENSE_TABLE_LEVEL}; level {k} has {} classes",
                level_size(k)
            )));
        }
        self.tables[k as usize]
            .get_or_init(|| {
                let table = if k == 0 {
                    CharTable::base()
                } else {
                    let prev = self.char_table(k - 1)?;
                    CharTable::next(&prev, self.level(k)?)
                };
                table.check()?;
                Ok(Arc::new(table))
            })
            .clone()
    }

    /// All irreducible labels of `P_{2^k}` in canonical order.
    pub fn irr_labels(&self, k: u32) -> Result<Vec<IrrLabel>> {
        let len = self.level(k)?.len();
        (0..len).map(|i| self.label_at(k, i)).collect()
    }

    pub fn label_at(&self, k: u32, i: usize) -> Result<IrrLabel> {
        let level = self.level(k)?;
        if i >= level.len() {
            return Err(Error::invalid(format!("label index {i} out of range at level {k}")));
        }
        Ok(match level.labels[i] {
            LabelNode::Trivial => IrrLabel::Trivial,
            LabelNode::Ext { sub, bit } => IrrLabel::Ext(Box::new(self.label_at(k - 1, sub as usize)?), bit),
            LabelNode::Ind { a, b } => {
                IrrLabel::Ind(Box::new(self.label_at(k - 1, a as usize)?), Box::new(self.label_at(k - 1, b as usize)?))
            }
        })
    }

    /// Index of a label in canonical order.
    pub fn label_index(&self, label: &IrrLabel) -> Result<usize> {
        Ok(match label {
            IrrLabel::Trivial => 0,
            IrrLabel::Ext(s, b) => 2 * self.label_index(s)? + *b as usize,
            IrrLabel::Ind(a, b) => {
                let m = level_size(label.level() - 1);
                let (ia, ib) = (self.label_index(a)? as u64, self.label_index(b)? as u64);
                if ia >= ib {
                    return Err(Error::invalid("induced label is not in canonical order"));
                }
                (2 * m + pair_index(ia, ib, m)) as usize
            }
        })
    }

    pub fn class_at(&self, k: u32, i: usize) -> Result<ClassDescriptor> {
        let level = self.level(k)?;
        if i >= level.len() {
            return Err(Error::invalid(format!("class index {i} out of range at level {k}")));
        }
        Ok(match level.classes[i] {
            ClassNode::Identity => ClassDescriptor::Identity,
            ClassNode::Base { a, b } => ClassDescriptor::Base(
                Box::new(self.class_at(k - 1, a as usize)?),
                Box::new(self.class_at(k - 1, b as usize)?),
            ),
            ClassNode::Outer { c } => ClassDescriptor::Outer(Box::new(self.class_at(k - 1, c as usize)?)),
        })
    }

    pub fn class_index(&self, class: &ClassDescriptor) -> Result<usize> {
        Ok(match class {
            ClassDescriptor::Identity => 0,
            ClassDescriptor::Base(a, b) => {
                let m = level_size(class.level() - 1);
                let (ia, ib) = (self.class_index(a)? as u64, self.class_index(b)? as u64);
                if ia > ib {
                    return Err(Error::invalid("base class is not in canonical order"));
                }
                base_index(ia, ib, m) as usize
            }
            ClassDescriptor::Outer(c) => {
                let m = level_size(class.level() - 1);
                (m * (m + 1) / 2 + self.class_index(c)? as u64) as usize
            }
        })
    }

    /// All conjugacy classes of `P_{2^k}` in canonical order.
    pub fn classes(&self, k: u32) -> Result<Vec<ConjClassData>> {
        let level = self.level(k)?;
        (0..level.len())
            .map(|i| {
                Ok(ConjClassData {
                    descriptor: self.class_at(k, i)?,
                    size: level.class_sizes[i],
                    cycle_type: level.cycle_types[i].clone(),
                })
            })
            .collect()
    }

    /// `Σ_c |c| f(c) χ(c)` for every label `χ` of level `k`, given a class
    /// function `f` as a vector over classes.
    ///
    /// Uses the dense table when one exists and [`Self::inner_products_factored`]
    /// above that.
    pub fn inner_products(&self, k: u32, f: &[i128]) -> Result<Vec<i128>> {
        if k <= MAX_DENSE_TABLE_LEVEL {
            self.inner_products_direct(k, f)
        } else {
            self.inner_products_factored(k, f)
        }
    }

    /// Row-by-row sum against the full level-`k` table.
    pub fn inner_products_direct(&self, k: u32, f: &[i128]) -> Result<Vec<i128>> {
        let table = self.char_table(k)?;
        let sizes = &table.level.class_sizes;
        check_len(f, sizes.len())?;
        let weighted: Vec<i128> =
            f.iter().zip(sizes).map(|(&v, &s)| checked_mul(v, s as i128)).collect::<Result<_>>()?;
        (0..table.len())
            .map(|i| {
                table
                    .row(i)
                    .iter()
                    .zip(&weighted)
                    .try_fold(0i128, |acc, (&chi, &w)| checked_add(acc, checked_mul(w, chi as i128)?))
            })
            .collect()
    }

    /// The same sums computed from the level-`(k − 1)` table only.
    ///
    /// On the base group the sum is the bilinear form `Σ_{a,b} F[a][b] φ(a)ψ(b)`
    /// with `F` symmetric, so all `Ext` and `Ind` values come out of one
    /// product `Φ F Φᵀ`; the outer coset contributes only to `Ext` labels.
    pub fn inner_products_factored(&self, k: u32, f: &[i128]) -> Result<Vec<i128>> {
        if k == 0 {
            check_len(f, 1)?;
            return Ok(f.to_vec());
        }
        let level = self.level(k)?;
        check_len(f, level.len())?;
        let prev = self.char_table(k - 1)?;
        let m = prev.len();
        let psz = &prev.level.class_sizes;
        let mut form = vec![0i128; m * m];
        let mut outer = vec![0i128; m];
        for (idx, class) in level.classes.iter().enumerate() {
            match *class {
                ClassNode::Base { a, b } => {
                    let (a, b) = (a as usize, b as usize);
                    let w = checked_mul(f[idx], (psz[a] * psz[b]) as i128)?;
                    form[a * m + b] = w;
                    form[b * m + a] = w;
                }
                ClassNode::Outer { c } => {
                    outer[c as usize] = checked_mul(f[idx], (prev.level.order * psz[c as usize]) as i128)?;
                }
                ClassNode::Identity => unreachable!(),
            }
        }
        // A = Φ F, then G = A Φᵀ
        let mut a_mat = vec![0i128; m * m];
        for phi in 0..m {
            let row = prev.row(phi);
            for (a, &v) in row.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let v = v as i128;
                let frow = &form[a * m..(a + 1) * m];
                let out = &mut a_mat[phi * m..(phi + 1) * m];
                for (o, &fv) in out.iter_mut().zip(frow) {
                    *o = checked_add(*o, checked_mul(v, fv)?)?;
                }
            }
        }
        let gram = |phi: usize, psi: usize| -> Result<i128> {
            a_mat[phi * m..(phi + 1) * m]
                .iter()
                .zip(prev.row(psi))
                .try_fold(0i128, |acc, (&x, &y)| checked_add(acc, checked_mul(x, y as i128)?))
        };
        let outer_sum = |phi: usize| -> Result<i128> {
            prev.row(phi)
                .iter()
                .zip(&outer)
                .try_fold(0i128, |acc, (&x, &w)| checked_add(acc, checked_mul(x as i128, w)?))
        };
        level
            .labels
            .iter()
            .map(|node| match *node {
                LabelNode::Ext { sub, bit } => {
                    let s = sub as usize;
                    checked_add(gram(s, s)?, sign(bit) as i128 * outer_sum(s)?)
                }
                LabelNode::Ind { a, b } => checked_mul(2, gram(a as usize, b as usize)?),
                LabelNode::Trivial => unreachable!(),
            })
            .collect()
    }

    /// Values of every label on class `j` of level `k`, from the level-`(k − 1)` table.
    pub fn column(&self, k: u32, j: usize) -> Result<Vec<i64>> {
        if k == 0 {
            return Ok(vec![1]);
        }
        let level = self.level(k)?;
        let prev = self.char_table(k - 1)?;
        let class = level.classes[j];
        Ok(level.labels.iter().map(|&node| node_value(&prev, node, class)).collect())
    }

    /// Values of label `i` on every class of level `k`, from the level-`(k − 1)` table.
    pub fn row(&self, k: u32, i: usize) -> Result<Vec<i64>> {
        if k == 0 {
            return Ok(vec![1]);
        }
        let level = self.level(k)?;
        let prev = self.char_table(k - 1)?;
        let node = level.labels[i];
        Ok(level.classes.iter().map(|&class| node_value(&prev, node, class)).collect())
    }

    /// Orthogonality on a sample of rows and columns of a level too large
    /// for a dense table. Rows go through [`Self::inner_products_factored`].
    pub fn check_sampled(&self, k: u32, rows: &[usize], cols: &[usize]) -> Result<()> {
        let level = self.level(k)?;
        let order = level.order as i128;
        for &i in rows {
            let f: Vec<i128> = self.row(k, i)?.into_iter().map(i128::from).collect();
            let ip = self.inner_products_factored(k, &f)?;
            for (j, &v) in ip.iter().enumerate() {
                let want = if i == j { order } else { 0 };
                if v != want {
                    return Err(Error::consistency(format!(
                        "level {k}: rows {i}, {j} have inner product {v}, expected {want}"
                    )));
                }
            }
        }
        let columns: Vec<Vec<i64>> = cols.iter().map(|&c| self.column(k, c)).collect::<Result<_>>()?;
        for (x, &c) in cols.iter().enumerate() {
            for (y, &d) in cols.iter().enumerate() {
                let s: i128 = columns[x].iter().zip(&columns[y]).map(|(&u, &v)| u as i128 * v as i128).sum();
                let want = if c == d { order / level.class_sizes[c] as i128 } else { 0 };
                if s != want {
                    return Err(Error::consistency(format!(
                        "level {k}: columns {c}, {d} have inner product {s}, expected {want}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn node_value(prev: &CharTable, node: LabelNode, class: ClassNode) -> i64 {
    match (node, class) {
        (LabelNode::Ext { sub, .. }, ClassNode::Base { a, b }) => {
            prev.get(sub as usize, a as usize) * prev.get(sub as usize, b as usize)
        }
        (LabelNode::Ext { sub, bit }, ClassNode::Outer { c }) => sign(bit) * prev.get(sub as usize, c as usize),
        (LabelNode::Ind { a: p, b: q }, ClassNode::Base { a, b }) => {
            let (p, q, a, b) = (p as usize, q as usize, a as usize, b as usize);
            prev.get(p, a) * prev.get(q, b) + prev.get(p, b) * prev.get(q, a)
        }
        (LabelNode::Ind { .. }, ClassNode::Outer { .. }) => 0,
        _ => 1,
    }
}

fn check_len(f: &[i128], n: usize) -> Result<()> {
    if f.len() != n {
        return Err(Error::invalid(format!("class function has {} values, expected {n}", f.len())));
    }
    Ok(())
}

pub(crate) fn checked_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or_else(|| Error::consistency("i128 overflow in character arithmetic"))
}

pub(crate) fn checked_add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or_else(|| Error::consistency("i128 overflow in character arithmetic"))
}
