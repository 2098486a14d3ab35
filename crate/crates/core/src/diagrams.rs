//! Crossingless matchings in the planar strip and their region colorings.
//!
//! Boundary points are labeled `B1..Bm` along the bottom and `T1..Tk` along the
//! top, both left to right. Internally a matching stores, for every label index
//! (`0..m` bottom, `m..m+k` top), the index of its partner.
//!
//! A color sequence `x` of length `m+1` colors the bottom regions: `x[0]` is
//! left of `B1`, `x[i]` lies between `Bi` and `B(i+1)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::color::{format_colors, parse_colors, Color};
use crate::error::{Error, Result};

/// A nonempty color word with distinct neighbours: a 1-morphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Color>", into = "Vec<Color>")]
pub struct ColorSequence(Vec<Color>);

impl ColorSequence {
    pub fn new(colors: Vec<Color>) -> Result<Self> {
        if colors.is_empty() {
            return Err(Error::InvalidSequence("empty sequence".into()));
        }
        if let Some(w) = colors.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSequence(format!(
                "{} has the repeated neighbour {}",
                format_colors(&colors),
                w[0]
            )));
        }
        Ok(ColorSequence(colors))
    }

    pub fn parse(word: &str) -> Result<Self> {
        Self::new(parse_colors(word)?)
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    /// Number of colors, so a single object has length 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Number of boundary points (strands) the sequence draws on a line.
    pub fn points(&self) -> usize {
        self.0.len() - 1
    }

    pub fn first(&self) -> &Color {
        &self.0[0]
    }

    pub fn last(&self) -> &Color {
        self.0.last().unwrap()
    }

    pub fn get(&self, i: usize) -> &Color {
        &self.0[i]
    }

    /// The first `n` colors.
    pub fn prefix(&self, n: usize) -> ColorSequence {
        assert!(n >= 1 && n <= self.len());
        ColorSequence(self.0[..n].to_vec())
    }

    /// Colors `start..=end`.
    pub fn slice(&self, start: usize, end: usize) -> ColorSequence {
        ColorSequence(self.0[start..=end].to_vec())
    }

    pub fn push(&self, c: Color) -> Result<ColorSequence> {
        let mut v = self.0.clone();
        v.push(c);
        Self::new(v)
    }

    pub fn without_last(&self) -> Option<ColorSequence> {
        (self.len() > 1).then(|| ColorSequence(self.0[..self.len() - 1].to_vec()))
    }

    /// Horizontal composition: `self` followed by `other`, sharing the region
    /// `self.last() == other.first()`.
    pub fn glue(&self, other: &ColorSequence) -> Result<ColorSequence> {
        if self.last() != other.first() {
            return Err(Error::InterfaceMismatch(format!(
                "cannot glue {self} to {other}: {} != {}",
                self.last(),
                other.first()
            )));
        }
        let mut v = self.0.clone();
        v.extend(other.0[1..].iter().cloned());
        Ok(ColorSequence(v))
    }

    /// The word obtained by capping points `i` and `i+1` (0-based): removes
    /// colors `i+1` and `i+2`. Requires `x[i] == x[i+2]`.
    pub fn capped_at(&self, i: usize) -> Result<ColorSequence> {
        if i + 2 >= self.len() || self.0[i] != self.0[i + 2] {
            return Err(Error::InterfaceMismatch(format!(
                "no cap at position {i} of {self}"
            )));
        }
        let mut v = self.0[..=i].to_vec();
        v.extend(self.0[i + 3..].iter().cloned());
        Ok(ColorSequence(v))
    }

    /// Positions `i` where a cap (or cup) can be attached.
    pub fn cap_positions(&self) -> Vec<usize> {
        (0..self.len().saturating_sub(2))
            .filter(|&i| self.0[i] == self.0[i + 2])
            .collect()
    }
}

impl TryFrom<Vec<Color>> for ColorSequence {
    type Error = Error;
    fn try_from(v: Vec<Color>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ColorSequence> for Vec<Color> {
    fn from(s: ColorSequence) -> Vec<Color> {
        s.0
    }
}

impl fmt::Display for ColorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_colors(&self.0))
    }
}

impl fmt::Debug for ColorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColorSequence({self})")
    }
}

/// A boundary point of the strip.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Endpoint {
    Bottom(usize),
    Top(usize),
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Bottom(i) => write!(f, "B{}", i + 1),
            Endpoint::Top(j) => write!(f, "T{}", j + 1),
        }
    }
}

impl Endpoint {
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad endpoint label {s:?}"));
        let (side, n) = s.split_at(1);
        let n: usize = n.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        match side {
            "B" => Ok(Endpoint::Bottom(n - 1)),
            "T" => Ok(Endpoint::Top(n - 1)),
            _ => Err(bad()),
        }
    }
}

/// A planar perfect matching of `bottom + top` boundary points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CrossinglessMatching {
    bottom: usize,
    top: usize,
    partner: Vec<usize>,
}

impl CrossinglessMatching {
    pub fn new(bottom: usize, top: usize, pairs: &[(Endpoint, Endpoint)]) -> Result<Self> {
        let n = bottom + top;
        let mut partner = vec![usize::MAX; n];
        let index = |e: Endpoint| -> Result<usize> {
            match e {
                Endpoint::Bottom(i) if i < bottom => Ok(i),
                Endpoint::Top(j) if j < top => Ok(bottom + j),
                _ => Err(Error::InvalidMatching(format!("endpoint {e} out of range"))),
            }
        };
        for &(a, b) in pairs {
            let (a, b) = (index(a)?, index(b)?);
            if a == b || partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::InvalidMatching("not a perfect matching".into()));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if partner.contains(&usize::MAX) {
            return Err(Error::InvalidMatching("unmatched endpoint".into()));
        }
        let m = CrossinglessMatching {
            bottom,
            top,
            partner,
        };
        if !m.is_noncrossing() {
            return Err(Error::InvalidMatching("chords cross".into()));
        }
        Ok(m)
    }

    pub(crate) fn from_partner(bottom: usize, top: usize, partner: Vec<usize>) -> Self {
        debug_assert_eq!(partner.len(), bottom + top);
        CrossinglessMatching {
            bottom,
            top,
            partner,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut partner = vec![0; 2 * n];
        for i in 0..n {
            partner[i] = n + i;
            partner[n + i] = i;
        }
        CrossinglessMatching {
            bottom: n,
            top: n,
            partner,
        }
    }

    /// `n` bottom points, `n-2` top points, bottom points `i` and `i+1` capped.
    pub fn cap(n: usize, i: usize) -> Self {
        assert!(i + 1 < n);
        let top = n - 2;
        let mut partner = vec![0; n + top];
        partner[i] = i + 1;
        partner[i + 1] = i;
        for b in 0..n {
            if b == i || b == i + 1 {
                continue;
            }
            let t = if b < i { b } else { b - 2 };
            partner[b] = n + t;
            partner[n + t] = b;
        }
        CrossinglessMatching {
            bottom: n,
            top,
            partner,
        }
    }

    /// `n` bottom points, `n+2` top points, top points `i` and `i+1` joined.
    pub fn cup(n: usize, i: usize) -> Self {
        Self::cap(n + 2, i).flip()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn endpoint(&self, idx: usize) -> Endpoint {
        if idx < self.bottom {
            Endpoint::Bottom(idx)
        } else {
            Endpoint::Top(idx - self.bottom)
        }
    }

    pub fn partner_of(&self, e: Endpoint) -> Endpoint {
        let idx = match e {
            Endpoint::Bottom(i) => i,
            Endpoint::Top(j) => self.bottom + j,
        };
        self.endpoint(self.partner[idx])
    }

    /// The canonical encoding: pairs `(lo, hi)` with `B* < T*`, sorted.
    pub fn pairs(&self) -> Vec<(Endpoint, Endpoint)> {
        (0..self.partner.len())
            .filter(|&a| a < self.partner[a])
            .map(|a| (self.endpoint(a), self.endpoint(self.partner[a])))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.bottom == self.top && (0..self.bottom).all(|i| self.partner[i] == self.bottom + i)
    }

    /// Number of chords joining the bottom to the top.
    pub fn through_strands(&self) -> usize {
        (0..self.bottom)
            .filter(|&i| self.partner[i] >= self.bottom)
            .count()
    }

    /// Every top point lies on a through strand.
    pub fn is_cap_diagram(&self) -> bool {
        self.through_strands() == self.top
    }

    /// Every bottom point lies on a through strand.
    pub fn is_cup_diagram(&self) -> bool {
        self.through_strands() == self.bottom
    }

    /// Position of a label index when walking the boundary counterclockwise:
    /// bottom left to right, then top right to left.
    fn circular(&self, idx: usize) -> usize {
        if idx < self.bottom {
            idx
        } else {
            let j = idx - self.bottom;
            self.bottom + self.top - 1 - j
        }
    }

    fn from_circular(&self, c: usize) -> usize {
        if c < self.bottom {
            c
        } else {
            self.bottom + (self.bottom + self.top - 1 - c)
        }
    }

    /// Partner map on circular positions.
    fn circular_partner(&self) -> Vec<usize> {
        let n = self.partner.len();
        let mut out = vec![0; n];
        for c in 0..n {
            out[c] = self.circular(self.partner[self.from_circular(c)]);
        }
        out
    }

    pub fn is_noncrossing(&self) -> bool {
        let cp = self.circular_partner();
        for a in 0..cp.len() {
            let b = cp[a];
            if a > b {
                continue;
            }
            // No chord may have exactly one endpoint strictly inside (a, b).
            if ((a + 1)..b).any(|c| cp[c] < a || cp[c] > b) {
                return false;
            }
        }
        true
    }

    /// Upside-down reflection.
    pub fn flip(&self) -> Self {
        let (m, k) = (self.bottom, self.top);
        let swap = |idx: usize| if idx < m { k + idx } else { idx - m };
        let mut partner = vec![0; m + k];
        for idx in 0..m + k {
            partner[swap(idx)] = swap(self.partner[idx]);
        }
        CrossinglessMatching {
            bottom: k,
            top: m,
            partner,
        }
    }

    /// Side-by-side placement, `self` on the left.
    pub fn juxtapose(&self, right: &Self) -> Self {
        let (m1, k1, m2, k2) = (self.bottom, self.top, right.bottom, right.top);
        let m = m1 + m2;
        let map_left = |idx: usize| if idx < m1 { idx } else { m + (idx - m1) };
        let map_right = |idx: usize| {
            if idx < m2 {
                m1 + idx
            } else {
                m + k1 + (idx - m2)
            }
        };
        let mut partner = vec![0; m + k1 + k2];
        for idx in 0..m1 + k1 {
            partner[map_left(idx)] = map_left(self.partner[idx]);
        }
        for idx in 0..m2 + k2 {
            partner[map_right(idx)] = map_right(right.partner[idx]);
        }
        CrossinglessMatching {
            bottom: m,
            top: k1 + k2,
            partner,
        }
    }

    pub fn to_json(&self) -> MatchingJson {
        MatchingJson {
            m: self.bottom,
            k: self.top,
            pairs: self
                .pairs()
                .into_iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect(),
        }
    }

    pub fn from_json(j: &MatchingJson) -> Result<Self> {
        let pairs = j
            .pairs
            .iter()
            .map(|[a, b]| Ok((Endpoint::parse(a)?, Endpoint::parse(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(j.m, j.k, &pairs)
    }
}

impl fmt::Display for CrossinglessMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs()
            .iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Wire form `{"m":3,"k":1,"pairs":[["B1","B2"],["B3","T1"]]}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatchingJson {
    pub m: usize,
    pub k: usize,
    pub pairs: Vec<[String; 2]>,
}

/// All crossingless matchings of `m` bottom and `k` top points, in canonical
/// order: by the partner of the first point (counterclockwise from `B1`),
/// then recursively inside that chord, then outside it.
pub fn enumerate_matchings(m: usize, k: usize) -> Vec<CrossinglessMatching> {
    let n = m + k;
    if n % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut circ = vec![usize::MAX; n];
    fill(&mut circ, &mut vec![(0, n)], &mut |cp: &[usize]| {
        let shape = CrossinglessMatching {
            bottom: m,
            top: k,
            partner: Vec::new(),
        };
        let mut partner = vec![0; n];
        for c in 0..n {
            partner[shape.from_circular(c)] = shape.from_circular(cp[c]);
        }
        out.push(CrossinglessMatching::from_partner(m, k, partner));
    });
    out
}

/// Matches the pending intervals of circular positions one after another.
fn fill(circ: &mut [usize], pending: &mut Vec<(usize, usize)>, emit: &mut dyn FnMut(&[usize])) {
    let Some((lo, hi)) = pending.pop() else {
        emit(circ);
        return;
    };
    if lo == hi {
        fill(circ, pending, emit);
        pending.push((lo, hi));
        return;
    }
    let mut j = lo + 1;
    while j < hi {
        circ[lo] = j;
        circ[j] = lo;
        // Inside first, so push the outside interval underneath it.
        pending.push((j + 1, hi));
        pending.push((lo + 1, j));
        fill(circ, pending, emit);
        pending.pop();
        pending.pop();
        j += 2;
    }
    pending.push((lo, hi));
}

/// A crossingless matching together with its forced region coloring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ColoredMatching {
    matching: CrossinglessMatching,
    source: ColorSequence,
    target: ColorSequence,
    /// Keyed by the smallest boundary arc (counterclockwise from `B1`) of the region.
    region_colors: BTreeMap<usize, Color>,
}

impl ColoredMatching {
    pub fn matching(&self) -> &CrossinglessMatching {
        &self.matching
    }

    pub fn source(&self) -> &ColorSequence {
        &self.source
    }

    pub fn target(&self) -> &ColorSequence {
        &self.target
    }

    pub fn region_colors(&self) -> &BTreeMap<usize, Color> {
        &self.region_colors
    }

    pub fn identity(x: &ColorSequence) -> Self {
        color_matching(&CrossinglessMatching::identity(x.points()), x, x)
            .expect("identity is always colorable")
    }

    pub fn flip(&self) -> Self {
        color_matching(&self.matching.flip(), &self.target, &self.source)
            .expect("flipping preserves colorability")
    }
}

/// Colors of the boundary regions met by the arc following circular position `c`.
fn arc_colors<'a>(
    d: &CrossinglessMatching,
    x: &'a ColorSequence,
    y: &'a ColorSequence,
    c: usize,
) -> Vec<&'a Color> {
    let (m, k) = (d.bottom, d.top);
    let n = m + k;
    if c + 1 < m {
        return vec![x.get(c + 1)];
    }
    if c + 1 == m {
        // Bottom right region, up the right wall, top right region.
        let mut v = vec![x.get(m), y.get(k)];
        if k == 0 {
            v.push(x.get(0));
        }
        return v;
    }
    if c + 1 < n {
        // After T_j (moving leftwards) comes top region j.
        let j = n - 1 - c;
        return vec![y.get(j)];
    }
    // After T1: top left region, down the left wall, bottom left region.
    let mut v = vec![y.get(0), x.get(0)];
    if m == 0 {
        v.push(y.get(k));
    }
    v
}

/// The forced coloring of `d` with bottom `x` and top `y`, if it is consistent.
pub fn color_matching(
    d: &CrossinglessMatching,
    x: &ColorSequence,
    y: &ColorSequence,
) -> Option<ColoredMatching> {
    if x.points() != d.bottom || y.points() != d.top {
        return None;
    }
    let n = d.bottom + d.top;
    if n == 0 {
        if x.first() != y.first() {
            return None;
        }
        return Some(ColoredMatching {
            matching: d.clone(),
            source: x.clone(),
            target: y.clone(),
            region_colors: BTreeMap::from([(0, x.first().clone())]),
        });
    }
    let mut arc_color: Vec<&Color> = Vec::with_capacity(n);
    for c in 0..n {
        let cs = arc_colors(d, x, y, c);
        if cs.iter().any(|col| *col != cs[0]) {
            return None;
        }
        arc_color.push(cs[0]);
    }
    let cp = d.circular_partner();
    let mut region_of = vec![usize::MAX; n];
    let mut region_colors = BTreeMap::new();
    for start in 0..n {
        if region_of[start] != usize::MAX {
            continue;
        }
        // Walk the region boundary: arc c, then the chord at c+1, then the arc
        // after that chord's other end.
        let mut c = start;
        loop {
            if arc_color[c] != arc_color[start] {
                return None;
            }
            region_of[c] = start;
            c = cp[(c + 1) % n];
            if c == start {
                break;
            }
        }
        region_colors.insert(start, arc_color[start].clone());
    }
    for c in 0..n {
        let before = (c + n - 1) % n;
        if region_colors[&region_of[before]] == region_colors[&region_of[c]] {
            return None;
        }
    }
    Some(ColoredMatching {
        matching: d.clone(),
        source: x.clone(),
        target: y.clone(),
        region_colors,
    })
}

/// The basis `CM(x, y)` of `Hom(x, y)`, in canonical order.
pub fn enumerate_colored(x: &ColorSequence, y: &ColorSequence) -> Vec<ColoredMatching> {
    if x.first() != y.first() || x.last() != y.last() {
        return Vec::new();
    }
    enumerate_matchings(x.points(), y.points())
        .iter()
        .filter_map(|d| color_matching(d, x, y))
        .collect()
}

/// The result of stacking `top` on `bottom`: the new matching, and for each
/// closed loop the middle-row point where it is leftmost.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Stacked {
    pub matching: CrossinglessMatching,
    pub loops: Vec<usize>,
}

/// Stacks `top` over `bottom` (which must have `bottom.top() == top.bottom()`).
pub fn stack_matchings(top: &CrossinglessMatching, bottom: &CrossinglessMatching) -> Stacked {
    let g = bottom;
    let f = top;
    let (mg, mid, kf) = (g.bottom, g.top, f.top);
    assert_eq!(mid, f.bottom, "stacking matchings with different interfaces");
    let m = mg;
    let mut partner = vec![usize::MAX; mg + kf];
    let mut seen_mid = vec![false; mid];

    // Follows a strand entering the middle row at `j` from below (going up).
    let go_up = |mut j: usize, seen: &mut [bool]| -> usize {
        loop {
            seen[j] = true;
            let r = f.partner[j];
            if r >= mid {
                return m + (r - mid);
            }
            seen[r] = true;
            let q = g.partner[mg + r];
            if q < mg {
                return q;
            }
            j = q - mg;
        }
    };
    // Follows a strand entering the middle row at `j` from above (going down).
    let go_down = |mut j: usize, seen: &mut [bool]| -> usize {
        loop {
            seen[j] = true;
            let q = g.partner[mg + j];
            if q < mg {
                return q;
            }
            let j2 = q - mg;
            seen[j2] = true;
            let r = f.partner[j2];
            if r >= mid {
                return m + (r - mid);
            }
            j = r;
        }
    };

    for i in 0..mg {
        if partner[i] != usize::MAX {
            continue;
        }
        let q = g.partner[i];
        let end = if q < mg {
            q
        } else {
            go_up(q - mg, &mut seen_mid)
        };
        partner[i] = end;
        partner[end] = i;
    }
    for j in 0..kf {
        let idx = m + j;
        if partner[idx] != usize::MAX {
            continue;
        }
        let r = f.partner[mid + j];
        let end = if r >= mid { m + (r - mid) } else { go_down(r, &mut seen_mid) };
        partner[idx] = end;
        partner[end] = idx;
    }
    let mut loops = Vec::new();
    for start in 0..mid {
        if seen_mid[start] {
            continue;
        }
        // A closed loop: alternate between chords of `g` and of `f`.
        let mut leftmost = start;
        let mut j = start;
        loop {
            seen_mid[j] = true;
            let via_g = g.partner[mg + j] - mg;
            seen_mid[via_g] = true;
            leftmost = leftmost.min(via_g);
            let via_f = f.partner[via_g];
            leftmost = leftmost.min(via_f);
            if via_f == start {
                break;
            }
            j = via_f;
        }
        loops.push(leftmost);
    }
    Stacked {
        matching: CrossinglessMatching::from_partner(mg, kf, partner),
        loops,
    }
}

/// A closed loop removed while composing: colors just inside and just outside.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Circle {
    pub inside: Color,
    pub outside: Color,
}

/// Colors of the loops found when stacking over the middle sequence `middle`.
pub fn circle_colors(loops: &[usize], middle: &ColorSequence) -> Vec<Circle> {
    loops
        .iter()
        .map(|&a| Circle {
            inside: middle.get(a + 1).clone(),
            outside: middle.get(a).clone(),
        })
        .collect()
}

/// `top ∘ bottom` with its closed loops removed.
pub fn compose_matchings(
    top: &ColoredMatching,
    bottom: &ColoredMatching,
) -> Result<(ColoredMatching, Vec<Circle>)> {
    if bottom.target != top.source {
        return Err(Error::InterfaceMismatch(format!(
            "cannot compose: {} != {}",
            bottom.target, top.source
        )));
    }
    let s = stack_matchings(&top.matching, &bottom.matching);
    let circles = circle_colors(&s.loops, &top.source);
    let composite = color_matching(&s.matching, &bottom.source, &top.target)
        .ok_or_else(|| Error::Invariant("composite of colored matchings is not colorable".into()))?;
    Ok((composite, circles))
}

/// The cup half `S: z -> y` and cap half `T: x -> z` with `d = S ∘ T`, where
/// `z` records the colors between the through strands.
pub fn factor(d: &ColoredMatching) -> (ColoredMatching, ColoredMatching, ColorSequence) {
    let mat = &d.matching;
    let (m, k) = (mat.bottom, mat.top);
    let through: Vec<(usize, usize)> = (0..m)
        .filter(|&i| mat.partner[i] >= m)
        .map(|i| (i, mat.partner[i] - m))
        .collect();
    let t = through.len();
    let mut z = vec![d.source.first().clone()];
    for &(b, _) in &through {
        z.push(d.source.get(b + 1).clone());
    }
    let z = ColorSequence::new(z).expect("colors across a through strand differ");

    let mut cap_partner = vec![usize::MAX; m + t];
    let mut cup_partner = vec![usize::MAX; t + k];
    for i in 0..m {
        let p = mat.partner[i];
        if p < m {
            cap_partner[i] = p;
        }
    }
    for j in 0..k {
        let p = mat.partner[m + j];
        if p >= m {
            cup_partner[t + j] = t + (p - m);
        }
    }
    for (l, &(b, tp)) in through.iter().enumerate() {
        cap_partner[b] = m + l;
        cap_partner[m + l] = b;
        cup_partner[l] = t + tp;
        cup_partner[t + tp] = l;
    }
    let cap = CrossinglessMatching::from_partner(m, t, cap_partner);
    let cup = CrossinglessMatching::from_partner(t, k, cup_partner);
    let cap = color_matching(&cap, &d.source, &z).expect("cap half is colorable");
    let cup = color_matching(&cup, &z, &d.target).expect("cup half is colorable");
    (cup, cap, z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> ColorSequence {
        ColorSequence::parse(s).unwrap()
    }

    #[test]
    fn sequences_reject_repeats() {
        assert!(ColorSequence::parse("rbbr").is_err());
        assert!(ColorSequence::parse("").is_err());
        assert_eq!(seq("rbr").points(), 2);
        assert_eq!(seq("rbrg").capped_at(0).unwrap(), seq("rg"));
        assert!(seq("rbg").capped_at(0).is_err());
    }

    #[test]
    fn small_matching_counts() {
        assert_eq!(enumerate_matchings(1, 1).len(), 1);
        assert!(enumerate_matchings(1, 1)[0].is_identity());
        assert_eq!(enumerate_matchings(2, 2).len(), 2);
        assert_eq!(enumerate_matchings(3, 3).len(), 5);
        assert_eq!(enumerate_matchings(0, 0).len(), 1);
        assert!(enumerate_matchings(2, 1).is_empty());
    }

    #[test]
    fn canonical_order_starts_with_first_point_paired_closest() {
        let all = enumerate_matchings(2, 2);
        // B1 pairs with B2 first (the cup-cap), then with T1 via T2.. order.
        assert_eq!(
            all[0].pairs(),
            vec![
                (Endpoint::Bottom(0), Endpoint::Bottom(1)),
                (Endpoint::Top(0), Endpoint::Top(1))
            ]
        );
        assert!(all[1].is_identity());
    }

    #[test]
    fn coloring_examples() {
        let id = CrossinglessMatching::identity(2);
        assert!(color_matching(&id, &seq("rgb"), &seq("rgb")).is_some());

        let cupcap = &enumerate_matchings(2, 2)[0];
        let c = color_matching(cupcap, &seq("rbr"), &seq("rbr")).unwrap();
        // The b under the cap, the b over the cup, and one r region joining both walls.
        let colors: Vec<&str> = c.region_colors().values().map(|c| c.name()).collect();
        assert_eq!(colors.len(), 3);
        assert_eq!(colors.iter().filter(|&&n| n == "b").count(), 2);

        for d in enumerate_matchings(2, 2) {
            assert!(color_matching(&d, &seq("rbr"), &seq("brb")).is_none());
        }
    }

    #[test]
    fn ten_to_eight_example_has_four_colorings() {
        assert_eq!(
            enumerate_colored(&seq("grgyrybgbyb"), &seq("gyrorybrb")).len(),
            4
        );
        assert_eq!(enumerate_colored(&seq("rgb"), &seq("rgb")).len(), 1);
        assert_eq!(enumerate_colored(&seq("rbrb"), &seq("rbrb")).len(), 5);
        assert_eq!(enumerate_colored(&seq("r"), &seq("b")).len(), 0);
    }

    #[test]
    fn cap_after_cup_is_a_circle() {
        let cup = color_matching(&CrossinglessMatching::cup(0, 0), &seq("b"), &seq("brb")).unwrap();
        let cap = cup.flip();
        assert_eq!(cap.source(), &seq("brb"));
        assert_eq!(cap.target(), &seq("b"));
        let (d, circles) = compose_matchings(&cap, &cup).unwrap();
        assert_eq!(d, ColoredMatching::identity(&seq("b")));
        assert_eq!(
            circles,
            vec![Circle {
                inside: Color::new("r").unwrap(),
                outside: Color::new("b").unwrap()
            }]
        );
    }

    #[test]
    fn cupcap_squared_has_one_inner_circle() {
        let x = seq("rbr");
        let u = color_matching(&enumerate_matchings(2, 2)[0], &x, &x).unwrap();
        let (d, circles) = compose_matchings(&u, &u).unwrap();
        assert_eq!(d, u);
        assert_eq!(
            circles,
            vec![Circle {
                inside: Color::new("b").unwrap(),
                outside: Color::new("r").unwrap()
            }]
        );
        let id = ColoredMatching::identity(&x);
        let (d, circles) = compose_matchings(&id, &id).unwrap();
        assert_eq!(d, id);
        assert!(circles.is_empty());
    }

    #[test]
    fn factor_examples() {
        let x = seq("rbr");
        let id = ColoredMatching::identity(&x);
        let (s, t, z) = factor(&id);
        assert_eq!((s.clone(), t.clone(), z), (id.clone(), id.clone(), x.clone()));

        let u = color_matching(&enumerate_matchings(2, 2)[0], &x, &x).unwrap();
        let (s, t, z) = factor(&u);
        assert_eq!(z, seq("r"));
        assert!(s.matching().is_cup_diagram());
        assert!(t.matching().is_cap_diagram());
        assert_eq!(s.matching(), &CrossinglessMatching::cup(0, 0));
        let (back, circles) = compose_matchings(&s, &t).unwrap();
        assert_eq!(back, u);
        assert!(circles.is_empty());
    }

    #[test]
    fn flip_examples() {
        let cup = color_matching(&CrossinglessMatching::cup(0, 0), &seq("b"), &seq("brb")).unwrap();
        let cap = color_matching(&CrossinglessMatching::cap(2, 0), &seq("brb"), &seq("b")).unwrap();
        assert_eq!(cup.flip(), cap);
        for d in enumerate_colored(&seq("grgyrybgbyb"), &seq("gyrorybrb")) {
            let f = d.flip();
            assert_eq!(f.source(), &seq("gyrorybrb"));
            assert_eq!(f.flip(), d);
        }
    }

    #[test]
    fn json_encoding() {
        let d = CrossinglessMatching::new(
            3,
            1,
            &[
                (Endpoint::Bottom(0), Endpoint::Bottom(1)),
                (Endpoint::Bottom(2), Endpoint::Top(0)),
            ],
        )
        .unwrap();
        let j = serde_json::to_string(&d.to_json()).unwrap();
        assert_eq!(j, r#"{"m":3,"k":1,"pairs":[["B1","B2"],["B3","T1"]]}"#);
        let back: MatchingJson = serde_json::from_str(&j).unwrap();
        assert_eq!(CrossinglessMatching::from_json(&back).unwrap(), d);
    }

    #[test]
    fn rejects_crossing_pairs() {
        let r = CrossinglessMatching::new(
            4,
            0,
            &[
                (Endpoint::Bottom(0), Endpoint::Bottom(2)),
                (Endpoint::Bottom(1), Endpoint::Bottom(3)),
            ],
        );
        assert!(r.is_err());
        let r = CrossinglessMatching::new(
            2,
            2,
            &[
                (Endpoint::Bottom(0), Endpoint::Top(1)),
                (Endpoint::Bottom(1), Endpoint::Top(0)),
            ],
        );
        assert!(r.is_err());
    }
}
