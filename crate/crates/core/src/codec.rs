//! Label packing, unpacking and the ancestry decoder.
//!
//! A label holds six fixed-width fields, least significant first:
//!
//! ```text
//! | i-1 | b-1 | a-1 | i'-1 | b'-1 | t |
//! ```
//!
//! `(i, a, b)` is the node's own interval `I(u) = [2^i·a, 2^i·(a+b)]`.
//! `(i', b')` are the scale and length of the supervisor's interval; its
//! offset is recovered as `a' = (2^i·a >> i') - t`.
//!
//! Widths are `lambda`, `lambda+2`, `ell+lambda+1`, `lambda`, `lambda+2` and
//! `lambda+3` bits (or `lambda+2` for `t` with [`OffsetWidth::Tight`]).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::Cell;
use core::fmt;

use crate::assign::{assign_intervals, AssignError, IntervalAssignment};
use crate::decorate::{decorate, DecoratedTree};
use crate::interval::{DyadicInterval, Interval, IntervalError, SchemeParams};
use crate::tree::{NodeId, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodecError {
    #[error("tree has {nodes} nodes, more than the family size {family_size}")]
    TreeTooLarge { nodes: usize, family_size: u64 },
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("own interval {own} is not inside the supervisor interval {sup}")]
    NotNested { own: Interval, sup: Interval },
    #[error("supervisor offset t = {t} exceeds the field maximum {max}")]
    OffsetOutOfRange { t: u64, max: u64 },
    #[error("label has bits set above bit {total_bits}")]
    TooWide { total_bits: u32 },
    #[error("malformed label hex {0:?}")]
    BadHex(String),
}

impl From<AssignError> for CodecError {
    fn from(e: AssignError) -> Self {
        match e {
            AssignError::TreeTooLarge { nodes, family_size } => {
                CodecError::TreeTooLarge { nodes, family_size }
            }
        }
    }
}

/// Width of the supervisor offset field `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OffsetWidth {
    /// `lambda + 3` bits, room for `t` in `[0, 4·ell + 1]`.
    Wide,
    /// `lambda + 2` bits, room for `t` in `[0, 4·ell - 1]`.
    Tight,
}

impl Default for OffsetWidth {
    fn default() -> Self {
        if cfg!(feature = "tight-offset") {
            OffsetWidth::Tight
        } else {
            OffsetWidth::Wide
        }
    }
}

const FIELDS: usize = 6;
const F_I: usize = 0;
const F_B: usize = 1;
const F_A: usize = 2;
const F_IS: usize = 3;
const F_BS: usize = 4;
const F_T: usize = 5;

/// Field geometry derived from [`SchemeParams`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelLayout {
    params: SchemeParams,
    offset_width: OffsetWidth,
    width: [u32; FIELDS],
    offset: [u32; FIELDS],
    // Extraction is `(x << left) >> right`.
    left: [u32; FIELDS],
    right: [u32; FIELDS],
    total_bits: u32,
}

impl LabelLayout {
    /// Layout with the default offset width (see the `tight-offset` feature).
    pub fn new(params: SchemeParams) -> Self {
        Self::with_offset_width(params, OffsetWidth::default())
    }

    pub fn with_offset_width(params: SchemeParams, offset_width: OffsetWidth) -> Self {
        let ell = params.ell();
        let lambda = params.lambda();
        let t_width = match offset_width {
            OffsetWidth::Wide => lambda + 3,
            OffsetWidth::Tight => lambda + 2,
        };
        let width = [
            lambda,
            lambda + 2,
            ell + lambda + 1,
            lambda,
            lambda + 2,
            t_width,
        ];
        let mut offset = [0; FIELDS];
        for f in 1..FIELDS {
            offset[f] = offset[f - 1] + width[f - 1];
        }
        let total_bits = offset[FIELDS - 1] + width[FIELDS - 1];
        assert!(total_bits <= 128);
        let mut left = [0; FIELDS];
        let mut right = [0; FIELDS];
        for f in 0..FIELDS {
            left[f] = 128 - offset[f] - width[f];
            right[f] = 128 - width[f];
        }
        LabelLayout {
            params,
            offset_width,
            width,
            offset,
            left,
            right,
            total_bits,
        }
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn offset_width(&self) -> OffsetWidth {
        self.offset_width
    }

    /// `ell + 6·lambda + 8`, or one less with [`OffsetWidth::Tight`].
    pub fn total_bits(&self) -> u32 {
        self.total_bits
    }

    /// Largest `t` the offset field can hold under the declared range.
    pub fn max_offset(&self) -> u64 {
        let ell = u64::from(self.params.ell());
        match self.offset_width {
            OffsetWidth::Wide => 4 * ell + 1,
            OffsetWidth::Tight => 4 * ell - 1,
        }
    }

    /// Number of hex digits in the text form: `total_bits` rounded up to a
    /// multiple of 16, divided by 4.
    pub fn hex_digits(&self) -> usize {
        (self.total_bits as usize).div_ceil(16) * 4
    }

    fn field(&self, label: Label, f: usize) -> u64 {
        ((label.0 << self.left[f]) >> self.right[f]) as u64
    }

    fn fits(&self, f: usize, value: u64) -> bool {
        self.width[f] >= 64 || value >> self.width[f] == 0
    }
}

/// A packed label, `total_bits` wide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub u128);

impl Label {
    pub fn bits(&self) -> u128 {
        self.0
    }

    /// Zero-padded lowercase hex of [`LabelLayout::hex_digits`] digits.
    pub fn to_hex(&self, layout: &LabelLayout) -> String {
        alloc::format!("{:0width$x}", self.0, width = layout.hex_digits())
    }

    pub fn from_hex(layout: &LabelLayout, text: &str) -> Result<Label, CodecError> {
        let text = text.trim();
        if text.is_empty() || text.len() > 32 || !text.bytes().all(|c| c.is_ascii_hexdigit()) {
            return Err(CodecError::BadHex(text.into()));
        }
        let bits = u128::from_str_radix(text, 16).map_err(|_| CodecError::BadHex(text.into()))?;
        if layout.total_bits < 128 && bits >> layout.total_bits != 0 {
            return Err(CodecError::TooWide {
                total_bits: layout.total_bits,
            });
        }
        Ok(Label(bits))
    }
}

impl fmt::LowerHex for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// The six stored fields of a label, with the stored-minus-one offsets undone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelFields {
    pub i: u32,
    pub a: u64,
    pub b: u64,
    pub sup_i: u32,
    pub sup_b: u64,
    pub t: u64,
}

impl LabelFields {
    pub fn read(layout: &LabelLayout, label: Label) -> Self {
        LabelFields {
            i: layout.field(label, F_I) as u32 + 1,
            b: layout.field(label, F_B) + 1,
            a: layout.field(label, F_A) + 1,
            sup_i: layout.field(label, F_IS) as u32 + 1,
            sup_b: layout.field(label, F_BS) + 1,
            t: layout.field(label, F_T),
        }
    }
}

/// Packs `I(u)` and `I(sp(u))` into a label.
pub fn pack(
    layout: &LabelLayout,
    own: &DyadicInterval,
    sup: &DyadicInterval,
) -> Result<Label, CodecError> {
    let params = layout.params();
    own.validate(params)?;
    sup.validate(params)?;
    let (own_iv, sup_iv) = (own.interval(), sup.interval());
    if !own_iv.is_within(&sup_iv) {
        return Err(CodecError::NotNested {
            own: own_iv,
            sup: sup_iv,
        });
    }
    // a'' = floor(alpha / 2^i'); nesting gives a' <= a''.
    let t = (own_iv.lo >> sup.i) - sup.a;
    if t > layout.max_offset() || !layout.fits(F_T, t) {
        return Err(CodecError::OffsetOutOfRange {
            t,
            max: layout.max_offset(),
        });
    }
    let values = [
        u64::from(own.i - 1),
        own.b - 1,
        own.a - 1,
        u64::from(sup.i - 1),
        sup.b - 1,
        t,
    ];
    let mut bits = 0u128;
    for (f, &v) in values.iter().enumerate() {
        debug_assert!(layout.fits(f, v), "field {f} value {v} overflows");
        bits |= u128::from(v) << layout.offset[f];
    }
    Ok(Label(bits))
}

/// Own and supervisor intervals reconstructed from a label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DecodedLabel {
    pub own: Interval,
    pub sup: Interval,
}

impl DecodedLabel {
    /// Decodes without validation.
    pub fn decode(layout: &LabelLayout, label: Label) -> Self {
        decode_with(&Plain, layout, label)
    }
}

/// Recovers `I(u)` and `I(sp(u))`, rejecting labels the marker cannot produce.
pub fn unpack(layout: &LabelLayout, label: Label) -> Result<DecodedLabel, CodecError> {
    let total_bits = layout.total_bits();
    if total_bits < 128 && label.0 >> total_bits != 0 {
        return Err(CodecError::TooWide { total_bits });
    }
    let f = LabelFields::read(layout, label);
    let params = layout.params();
    DyadicInterval::new(f.i, f.a, f.b).validate(params)?;
    let alpha = f.a << f.i;
    let a_hint = alpha >> f.sup_i;
    if f.t > layout.max_offset() || f.t >= a_hint {
        return Err(CodecError::OffsetOutOfRange {
            t: f.t,
            max: layout.max_offset().min(a_hint.saturating_sub(1)),
        });
    }
    DyadicInterval::new(f.sup_i, a_hint - f.t, f.sup_b).validate(params)?;
    let decoded = DecodedLabel::decode(layout, label);
    if !decoded.own.is_within(&decoded.sup) {
        return Err(CodecError::NotNested {
            own: decoded.own,
            sup: decoded.sup,
        });
    }
    Ok(decoded)
}

/// The word operations the decoder is allowed to use.
///
/// The decoder is written only in terms of this trait, which has no
/// multiplication, division or table lookup. [`OpCounter`] tallies calls.
pub trait WordOps {
    fn shl_wide(&self, x: u128, s: u32) -> u128;
    fn shr_wide(&self, x: u128, s: u32) -> u128;
    fn eq_wide(&self, x: u128, y: u128) -> bool;
    fn shl(&self, x: u64, s: u32) -> u64;
    fn shr(&self, x: u64, s: u32) -> u64;
    fn add(&self, x: u64, y: u64) -> u64;
    fn sub(&self, x: u64, y: u64) -> u64;
    fn lt(&self, x: u64, y: u64) -> bool;
    fn le(&self, x: u64, y: u64) -> bool;
    fn eq(&self, x: u64, y: u64) -> bool;
}

/// Plain machine operations.
#[derive(Debug, Clone, Copy, Default)]
pub struct Plain;

impl WordOps for Plain {
    #[inline(always)]
    fn shl_wide(&self, x: u128, s: u32) -> u128 {
        x << s
    }
    #[inline(always)]
    fn shr_wide(&self, x: u128, s: u32) -> u128 {
        x >> s
    }
    #[inline(always)]
    fn eq_wide(&self, x: u128, y: u128) -> bool {
        x == y
    }
    #[inline(always)]
    fn shl(&self, x: u64, s: u32) -> u64 {
        x.wrapping_shl(s)
    }
    #[inline(always)]
    fn shr(&self, x: u64, s: u32) -> u64 {
        x.wrapping_shr(s)
    }
    #[inline(always)]
    fn add(&self, x: u64, y: u64) -> u64 {
        x.wrapping_add(y)
    }
    #[inline(always)]
    fn sub(&self, x: u64, y: u64) -> u64 {
        x.wrapping_sub(y)
    }
    #[inline(always)]
    fn lt(&self, x: u64, y: u64) -> bool {
        x < y
    }
    #[inline(always)]
    fn le(&self, x: u64, y: u64) -> bool {
        x <= y
    }
    #[inline(always)]
    fn eq(&self, x: u64, y: u64) -> bool {
        x == y
    }
}

/// Counts every operation the decoder performs, by kind.
#[derive(Debug, Default)]
pub struct OpCounter {
    pub shifts: Cell<u64>,
    pub adds: Cell<u64>,
    pub subs: Cell<u64>,
    pub compares: Cell<u64>,
}

impl OpCounter {
    pub fn total(&self) -> u64 {
        self.shifts.get() + self.adds.get() + self.subs.get() + self.compares.get()
    }

    fn bump(c: &Cell<u64>) {
        c.set(c.get() + 1);
    }
}

impl WordOps for OpCounter {
    fn shl_wide(&self, x: u128, s: u32) -> u128 {
        Self::bump(&self.shifts);
        Plain.shl_wide(x, s)
    }
    fn shr_wide(&self, x: u128, s: u32) -> u128 {
        Self::bump(&self.shifts);
        Plain.shr_wide(x, s)
    }
    fn eq_wide(&self, x: u128, y: u128) -> bool {
        Self::bump(&self.compares);
        x == y
    }
    fn shl(&self, x: u64, s: u32) -> u64 {
        Self::bump(&self.shifts);
        Plain.shl(x, s)
    }
    fn shr(&self, x: u64, s: u32) -> u64 {
        Self::bump(&self.shifts);
        Plain.shr(x, s)
    }
    fn add(&self, x: u64, y: u64) -> u64 {
        Self::bump(&self.adds);
        Plain.add(x, y)
    }
    fn sub(&self, x: u64, y: u64) -> u64 {
        Self::bump(&self.subs);
        Plain.sub(x, y)
    }
    fn lt(&self, x: u64, y: u64) -> bool {
        Self::bump(&self.compares);
        x < y
    }
    fn le(&self, x: u64, y: u64) -> bool {
        Self::bump(&self.compares);
        x <= y
    }
    fn eq(&self, x: u64, y: u64) -> bool {
        Self::bump(&self.compares);
        x == y
    }
}

#[inline(always)]
fn extract<O: WordOps>(ops: &O, layout: &LabelLayout, label: Label, f: usize) -> u64 {
    ops.shr_wide(ops.shl_wide(label.0, layout.left[f]), layout.right[f]) as u64
}

#[inline(always)]
fn own_interval<O: WordOps>(ops: &O, layout: &LabelLayout, label: Label) -> Interval {
    let i = ops.add(extract(ops, layout, label, F_I), 1) as u32;
    let b = ops.add(extract(ops, layout, label, F_B), 1);
    let a = ops.add(extract(ops, layout, label, F_A), 1);
    Interval {
        lo: ops.shl(a, i),
        hi: ops.shl(ops.add(a, b), i),
    }
}

#[inline(always)]
fn decode_with<O: WordOps>(ops: &O, layout: &LabelLayout, label: Label) -> DecodedLabel {
    let own = own_interval(ops, layout, label);
    let sup_i = ops.add(extract(ops, layout, label, F_IS), 1) as u32;
    let sup_b = ops.add(extract(ops, layout, label, F_BS), 1);
    let t = extract(ops, layout, label, F_T);
    let sup_a = ops.sub(ops.shr(own.lo, sup_i), t);
    let sup = Interval {
        lo: ops.shl(sup_a, sup_i),
        hi: ops.shl(ops.add(sup_a, sup_b), sup_i),
    };
    DecodedLabel { own, sup }
}

#[inline(always)]
fn conditions_hold<O: WordOps>(ops: &O, u: &DecodedLabel, v: &Interval) -> bool {
    // D1: I(v) strictly inside I(sp(u)).
    let d1 = ops.le(u.sup.lo, v.lo)
        && ops.le(v.hi, u.sup.hi)
        && !(ops.eq(u.sup.lo, v.lo) && ops.eq(v.hi, u.sup.hi));
    // D2: I(u) before I(v), or u is its own supervisor.
    d1 && (ops.lt(u.own.hi, v.lo) || (ops.eq(u.own.lo, u.sup.lo) && ops.eq(u.own.hi, u.sup.hi)))
}

/// [`decide_ancestry`] over an arbitrary [`WordOps`] implementation.
#[inline(always)]
pub fn decide_ancestry_with<O: WordOps>(ops: &O, layout: &LabelLayout, u: Label, v: Label) -> bool {
    if ops.eq_wide(u.0, v.0) {
        return false;
    }
    let du = decode_with(ops, layout, u);
    let iv = own_interval(ops, layout, v);
    conditions_hold(ops, &du, &iv)
}

/// True iff the node labeled `u` is a strict ancestor of the node labeled `v`.
///
/// Both labels must come from one [`mark`] call. On other inputs the answer
/// is unspecified.
#[inline]
pub fn decide_ancestry(layout: &LabelLayout, u: Label, v: Label) -> bool {
    decide_ancestry_with(&Plain, layout, u, v)
}

/// The same decision on labels decoded ahead of time.
#[inline]
pub fn decide_decoded(u: &DecodedLabel, v: &DecodedLabel) -> bool {
    u.own != v.own && conditions_hold(&Plain, u, &v.own)
}

/// Output of [`mark`]: one label per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub layout: LabelLayout,
    pub labels: Vec<Label>,
    /// Largest supervisor offset `t` written into any label.
    pub max_offset_used: u64,
}

impl Labeling {
    pub fn label(&self, v: NodeId) -> Label {
        self.labels[v]
    }

    pub fn decide(&self, u: NodeId, v: NodeId) -> bool {
        decide_ancestry(&self.layout, self.labels[u], self.labels[v])
    }
}

/// Output of [`mark_detailed`]: the labeling together with the decorations
/// and intervals it was built from, all indexed by the caller's node ids.
#[derive(Debug, Clone)]
pub struct DetailedLabeling {
    pub labeling: Labeling,
    pub decorated: DecoratedTree,
    pub assignment: IntervalAssignment,
}

/// Labels every node of `tree` for the family of trees with at most
/// `params.family_size()` nodes, using the default layout.
pub fn mark(tree: &RootedTree, params: &SchemeParams) -> Result<Labeling, CodecError> {
    mark_with_layout(tree, &LabelLayout::new(*params))
}

/// [`mark`] with an explicit layout.
///
/// Works on a breadth-first renumbering of the tree, which keeps memory
/// access local on trees whose ids are scattered, and writes each label back
/// under its original id. The labels equal those of [`mark_detailed`].
pub fn mark_with_layout(tree: &RootedTree, layout: &LabelLayout) -> Result<Labeling, CodecError> {
    let (local, order) = tree.bfs_renumbered();
    let decorated = decorate(&local);
    let assignment = assign_intervals(&decorated, layout.params())?;
    let (packed, max_offset_used) = pack_all(layout, &decorated, &assignment)?;
    let mut labels = vec![Label(0); tree.node_count()];
    for (v, label) in packed.into_iter().enumerate() {
        labels[order[v]] = label;
    }
    Ok(Labeling {
        layout: *layout,
        labels,
        max_offset_used,
    })
}

/// Labels `tree` directly on its own ids and keeps the intermediate data.
pub fn mark_detailed(
    tree: &RootedTree,
    layout: &LabelLayout,
) -> Result<DetailedLabeling, CodecError> {
    let decorated = decorate(tree);
    let assignment = assign_intervals(&decorated, layout.params())?;
    let (labels, max_offset_used) = pack_all(layout, &decorated, &assignment)?;
    Ok(DetailedLabeling {
        labeling: Labeling {
            layout: *layout,
            labels,
            max_offset_used,
        },
        decorated,
        assignment,
    })
}

fn pack_all(
    layout: &LabelLayout,
    decorated: &DecoratedTree,
    assignment: &IntervalAssignment,
) -> Result<(Vec<Label>, u64), CodecError> {
    let mut labels = Vec::with_capacity(decorated.node_count());
    let mut max_offset_used = 0;
    for v in 0..decorated.node_count() {
        let own = assignment.interval(v);
        let sup = assignment.interval(decorated.supervisor(v));
        let label = pack(layout, &own, &sup)?;
        max_offset_used = max_offset_used.max(layout.field(label, F_T));
        labels.push(label);
    }
    Ok((labels, max_offset_used))
}
