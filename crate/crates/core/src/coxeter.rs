//! Finite Weyl groups realized through their integral action on the root lattice.
//!
//! A [`CoxeterSystem`] is fully enumerated at construction time. Elements are
//! stored in canonical order (length first, then ShortLex word), so the index
//! of an [`Element`] doubles as its canonical sort key. Generators are indexed
//! from 0 internally and follow the Bourbaki labeling; everything user-facing
//! (words, JSON) is 1-based.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::OnceLock;

/// Default bound on |W| for full enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 50_000;

/// Above this order the Bruhat order is answered on demand instead of from a
/// precomputed bit matrix.
const BRUHAT_MATRIX_CAP: usize = 12_000;

static NEXT_SYSTEM_ID: AtomicU32 = AtomicU32::new(1);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("unknown Cartan type `{0}` (expected A, B or D)")]
    UnknownType(String),
    #[error("{label}{rank} is not a valid finite type")]
    InvalidRank { label: CartanType, rank: usize },
    #[error("group order exceeds the enumeration cap of {cap} elements")]
    TooLarge { cap: usize },
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("elements belong to different Coxeter systems")]
    MixedSystems,
    #[error("generator index {index} out of range for rank {rank}")]
    BadGenerator { index: usize, rank: usize },
    #[error("`{0}` is not a permutation of the right size")]
    BadPermutation(String),
    #[error("cannot parse `{0}` as a group element")]
    BadWord(String),
    #[error("operation requires a system of type A")]
    NotTypeA,
}

pub type Result<T, E = CoxeterError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    D,
    /// Built from an explicit Coxeter or Cartan matrix.
    Custom,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::D => "D",
            CartanType::Custom => "X",
        };
        f.write_str(s)
    }
}

impl FromStr for CartanType {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(CartanType::A),
            "B" | "b" => Ok(CartanType::B),
            "D" | "d" => Ok(CartanType::D),
            other => Err(CoxeterError::UnknownType(other.to_string())),
        }
    }
}

/// Which side a descent or multiplication happens on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A handle to an element of a particular [`CoxeterSystem`].
///
/// Ordering on handles of the same system is the canonical
/// length-then-ShortLex order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    system: u32,
    index: u32,
}

impl Element {
    #[inline]
    pub fn index(self) -> usize {
        self.index as usize
    }

    #[inline]
    pub fn system_id(self) -> u32 {
        self.system
    }
}

pub struct CoxeterSystem {
    id: u32,
    label: CartanType,
    rank: usize,
    coxeter_matrix: Vec<Vec<u32>>,
    cartan: Vec<Vec<i32>>,
    positive_roots: Vec<Vec<i32>>,
    /// Row-major `rank x rank` matrices; column j is w(alpha_j) in simple-root coordinates.
    actions: Vec<i32>,
    lengths: Vec<u32>,
    words: Vec<Vec<u8>>,
    right_table: Vec<u32>,
    left_table: Vec<u32>,
    inverses: Vec<u32>,
    bruhat: OnceLock<Option<BitMatrix>>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem").field("type", &self.label).field("rank", &self.rank).field("order", &self.order()).finish()
    }
}

/// Cartan matrix `a[i][j] = <alpha_i^vee, alpha_j>` for the classical types.
pub fn cartan_matrix(label: CartanType, rank: usize) -> Result<Vec<Vec<i32>>> {
    let valid = match label {
        CartanType::A => rank >= 1,
        CartanType::B => rank >= 2,
        CartanType::D => rank >= 4,
        CartanType::Custom => false,
    };
    if !valid {
        return Err(CoxeterError::InvalidRank { label, rank });
    }
    let mut a = vec![vec![0i32; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    match label {
        CartanType::A => {
            for i in 0..rank - 1 {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        CartanType::B => {
            for i in 0..rank - 1 {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
            // alpha_n is short
            a[rank - 1][rank - 2] = -2;
        }
        CartanType::D => {
            for i in 0..rank - 2 {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
            a[rank - 3][rank - 1] = -1;
            a[rank - 1][rank - 3] = -1;
        }
        CartanType::Custom => unreachable!(),
    }
    Ok(a)
}

fn coxeter_from_cartan(cartan: &[Vec<i32>]) -> Result<Vec<Vec<u32>>> {
    let n = cartan.len();
    let mut m = vec![vec![1u32; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            m[i][j] = match cartan[i][j] * cartan[j][i] {
                0 => 2,
                1 => 3,
                2 => 4,
                3 => 6,
                p => return Err(CoxeterError::InvalidMatrix(format!("product a_ij a_ji = {p} at ({i},{j}) gives an infinite group"))),
            };
        }
    }
    Ok(m)
}

impl CoxeterSystem {
    /// Builds and fully enumerates the Weyl group of the given classical type.
    pub fn build(label: CartanType, rank: usize) -> Result<Self> {
        Self::build_with_cap(label, rank, DEFAULT_ENUMERATION_CAP)
    }

    pub fn build_with_cap(label: CartanType, rank: usize, cap: usize) -> Result<Self> {
        let cartan = cartan_matrix(label, rank)?;
        Self::from_cartan(label, cartan, cap)
    }

    /// Builds a system from an explicit Coxeter matrix with entries in {2,3,4,6}.
    ///
    /// An integral Cartan matrix is chosen with `a_ij = -1` and
    /// `a_ji = -(m_ij - 2)` style products; this works for any Coxeter graph
    /// whose cycles only carry simple edges, which covers every finite
    /// crystallographic type.
    pub fn from_coxeter_matrix(m: &[Vec<u32>], cap: usize) -> Result<Self> {
        let n = m.len();
        if n == 0 || m.iter().any(|row| row.len() != n) {
            return Err(CoxeterError::InvalidMatrix("matrix must be square and non-empty".into()));
        }
        let mut cartan = vec![vec![0i32; n]; n];
        for i in 0..n {
            if m[i][i] != 1 {
                return Err(CoxeterError::InvalidMatrix(format!("m({i},{i}) must be 1")));
            }
            cartan[i][i] = 2;
            for j in (i + 1)..n {
                if m[i][j] != m[j][i] {
                    return Err(CoxeterError::InvalidMatrix("matrix must be symmetric".into()));
                }
                let (a, b) = match m[i][j] {
                    2 => (0, 0),
                    3 => (-1, -1),
                    4 => (-1, -2),
                    6 => (-1, -3),
                    other => return Err(CoxeterError::InvalidMatrix(format!("m({i},{j}) = {other} is not crystallographic"))),
                };
                cartan[i][j] = a;
                cartan[j][i] = b;
            }
        }
        Self::from_cartan(CartanType::Custom, cartan, cap)
    }

    pub fn from_cartan(label: CartanType, cartan: Vec<Vec<i32>>, cap: usize) -> Result<Self> {
        let rank = cartan.len();
        if rank == 0 || cartan.iter().any(|r| r.len() != rank) {
            return Err(CoxeterError::InvalidMatrix("Cartan matrix must be square and non-empty".into()));
        }
        let coxeter_matrix = coxeter_from_cartan(&cartan)?;
        let positive_roots = positive_roots(&cartan, cap)?;
        let enumeration = enumerate(&cartan, cap)?;
        let system = CoxeterSystem {
            id: NEXT_SYSTEM_ID.fetch_add(1, Ordering::Relaxed),
            label,
            rank,
            coxeter_matrix,
            cartan,
            positive_roots,
            actions: enumeration.actions,
            lengths: enumeration.lengths,
            words: enumeration.words,
            right_table: enumeration.right,
            left_table: enumeration.left,
            inverses: enumeration.inverses,
            bruhat: OnceLock::new(),
        };
        if system.positive_roots.len() != system.lengths[system.order() - 1] as usize {
            return Err(CoxeterError::InvalidMatrix("number of positive roots does not match l(w0)".into()));
        }
        Ok(system)
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn label(&self) -> CartanType {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter_matrix
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.positive_roots
    }

    /// Short human-readable name such as `A3`.
    pub fn name(&self) -> String {
        format!("{}{}", self.label, self.rank)
    }

    #[inline]
    pub fn element(&self, index: usize) -> Element {
        assert!(index < self.order(), "element index {index} out of range");
        Element { system: self.id, index: index as u32 }
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = Element> + '_ {
        (0..self.order()).map(move |i| Element { system: self.id, index: i as u32 })
    }

    pub fn identity(&self) -> Element {
        self.element(0)
    }

    pub fn w0(&self) -> Element {
        self.element(self.order() - 1)
    }

    pub fn generator(&self, s: usize) -> Element {
        assert!(s < self.rank, "generator {s} out of range");
        self.element(self.right_table[s] as usize)
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.rank).map(|s| self.generator(s)).collect()
    }

    #[inline]
    fn idx(&self, x: Element) -> usize {
        assert_eq!(x.system, self.id, "element from a different Coxeter system");
        x.index as usize
    }

    pub fn owns(&self, x: Element) -> bool {
        x.system == self.id
    }

    fn check(&self, x: Element) -> Result<usize> {
        if x.system == self.id {
            Ok(x.index as usize)
        } else {
            Err(CoxeterError::MixedSystems)
        }
    }

    #[inline]
    pub fn length(&self, x: Element) -> usize {
        self.lengths[self.idx(x)] as usize
    }

    #[inline]
    pub fn length_at(&self, i: usize) -> usize {
        self.lengths[i] as usize
    }

    pub fn max_length(&self) -> usize {
        self.lengths[self.order() - 1] as usize
    }

    /// The ShortLex normal form, 0-based generator indices.
    pub fn word(&self, x: Element) -> &[u8] {
        &self.words[self.idx(x)]
    }

    #[inline]
    pub fn word_at(&self, i: usize) -> &[u8] {
        &self.words[i]
    }

    /// The action matrix of `x` (row-major, `rank x rank`).
    pub fn action(&self, x: Element) -> &[i32] {
        let i = self.idx(x);
        let r2 = self.rank * self.rank;
        &self.actions[i * r2..(i + 1) * r2]
    }

    pub fn inverse(&self, x: Element) -> Element {
        self.element(self.inverses[self.idx(x)] as usize)
    }

    #[inline]
    pub fn inverse_at(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    pub fn is_involution(&self, x: Element) -> bool {
        let i = self.idx(x);
        self.inverses[i] as usize == i
    }

    /// `x * s`.
    #[inline]
    pub fn right_mul_at(&self, i: usize, s: usize) -> usize {
        self.right_table[i * self.rank + s] as usize
    }

    /// `s * x`.
    #[inline]
    pub fn left_mul_at(&self, s: usize, i: usize) -> usize {
        self.left_table[i * self.rank + s] as usize
    }

    pub fn right_mul(&self, x: Element, s: usize) -> Element {
        assert!(s < self.rank);
        self.element(self.right_mul_at(self.idx(x), s))
    }

    pub fn left_mul(&self, s: usize, x: Element) -> Element {
        assert!(s < self.rank);
        self.element(self.left_mul_at(s, self.idx(x)))
    }

    pub fn multiply(&self, x: Element, y: Element) -> Result<Element> {
        let xi = self.check(x)?;
        let yi = self.check(y)?;
        Ok(self.element(self.mul_at(xi, yi)))
    }

    pub fn mul_at(&self, x: usize, y: usize) -> usize {
        self.words[y].iter().fold(x, |acc, &s| self.right_mul_at(acc, s as usize))
    }

    /// The product of a word of 0-based generator indices.
    pub fn product(&self, word: &[usize]) -> Result<Element> {
        let mut acc = 0usize;
        for &s in word {
            if s >= self.rank {
                return Err(CoxeterError::BadGenerator { index: s, rank: self.rank });
            }
            acc = self.right_mul_at(acc, s);
        }
        Ok(self.element(acc))
    }

    /// Conjugation `x -> w0 x w0`.
    pub fn w0_conjugate(&self, x: Element) -> Element {
        let w0 = self.order() - 1;
        self.element(self.mul_at(self.mul_at(w0, self.idx(x)), w0))
    }

    /// Bit mask of descents: bit `s` set iff `l(xs) < l(x)` (right) or `l(sx) < l(x)` (left).
    pub fn descent_mask_at(&self, i: usize, side: Side) -> u64 {
        let l = self.lengths[i];
        let mut mask = 0u64;
        for s in 0..self.rank {
            let j = match side {
                Side::Right => self.right_mul_at(i, s),
                Side::Left => self.left_mul_at(s, i),
            };
            if self.lengths[j] < l {
                mask |= 1 << s;
            }
        }
        mask
    }

    pub fn descents(&self, x: Element, side: Side) -> Vec<usize> {
        let mask = self.descent_mask_at(self.idx(x), side);
        (0..self.rank).filter(|s| mask >> s & 1 == 1).collect()
    }

    /// Set of simple reflections occurring in any reduced word of `x`.
    pub fn support(&self, x: Element) -> BTreeSet<usize> {
        self.word(x).iter().map(|&s| s as usize).collect()
    }

    /// The number of distinct simple reflections in a reduced word of `x`.
    pub fn support_size(&self, x: Element) -> usize {
        self.support(x).len()
    }

    /// Longest element of the standard parabolic subgroup generated by `subset`.
    pub fn parabolic_longest(&self, subset: &[usize]) -> Result<Element> {
        for &s in subset {
            if s >= self.rank {
                return Err(CoxeterError::BadGenerator { index: s, rank: self.rank });
            }
        }
        let mut w = 0usize;
        'grow: loop {
            for &s in subset {
                let ws = self.right_mul_at(w, s);
                if self.lengths[ws] > self.lengths[w] {
                    w = ws;
                    continue 'grow;
                }
            }
            return Ok(self.element(w));
        }
    }

    /// Minimal length representatives of the cosets `W_S \ W`.
    pub fn min_coset_reps(&self, subset: &[usize]) -> Result<Vec<Element>> {
        let mut mask = 0u64;
        for &s in subset {
            if s >= self.rank {
                return Err(CoxeterError::BadGenerator { index: s, rank: self.rank });
            }
            mask |= 1 << s;
        }
        Ok((0..self.order()).filter(|&i| self.descent_mask_at(i, Side::Left) & mask == 0).map(|i| self.element(i)).collect())
    }

    /// All reflections, i.e. conjugates of simple reflections, in canonical order.
    pub fn reflections(&self) -> Vec<Element> {
        let mut set = BTreeSet::new();
        for s in 0..self.rank {
            let si = self.right_table[s] as usize;
            for w in 0..self.order() {
                let t = self.mul_at(self.mul_at(w, si), self.inverses[w] as usize);
                set.insert(t);
            }
        }
        set.into_iter().map(|i| self.element(i)).collect()
    }

    pub fn bruhat_leq(&self, x: Element, y: Element) -> Result<bool> {
        let xi = self.check(x)?;
        let yi = self.check(y)?;
        Ok(self.bruhat_leq_at(xi, yi))
    }

    #[inline]
    pub fn bruhat_leq_at(&self, x: usize, y: usize) -> bool {
        match self.bruhat_matrix() {
            Some(m) => m.get(y, x),
            None => self.bruhat_leq_descending(x, y),
        }
    }

    /// Row `y` of the Bruhat matrix: bit `x` set iff `x <= y`. `None` above the matrix cap.
    pub fn bruhat_row(&self, y: usize) -> Option<&[u64]> {
        self.bruhat_matrix().map(|m| m.row(y))
    }

    /// On-demand test peeling left descents off `y`:
    /// if `sy < y` then `x <= y` iff `min(x, sx) <= sy`.
    fn bruhat_leq_descending(&self, mut x: usize, mut y: usize) -> bool {
        loop {
            if self.lengths[x] > self.lengths[y] {
                return false;
            }
            if self.lengths[x] == self.lengths[y] {
                return x == y;
            }
            let s = self.words[y][0] as usize;
            y = self.left_mul_at(s, y);
            let sx = self.left_mul_at(s, x);
            if self.lengths[sx] < self.lengths[x] {
                x = sx;
            }
        }
    }

    fn bruhat_matrix(&self) -> Option<&BitMatrix> {
        self.bruhat
            .get_or_init(|| {
                if self.order() > BRUHAT_MATRIX_CAP {
                    return None;
                }
                Some(self.build_bruhat_matrix())
            })
            .as_ref()
    }

    /// Subword criterion along the ShortLex word `s y'` of `y`: the products of
    /// subwords of `s w` are those of `w` together with `s` times them.
    fn build_bruhat_matrix(&self) -> BitMatrix {
        let n = self.order();
        let mut m = BitMatrix::new(n);
        m.set(0, 0);
        for y in 1..n {
            let s = self.words[y][0] as usize;
            let prev = self.left_mul_at(s, y);
            let members: Vec<usize> = m.iter_row(prev).collect();
            for x in members {
                m.set(y, x);
                m.set(y, self.left_mul_at(s, x));
            }
        }
        m
    }

    /// One-line notation (values 1..=n+1) of a type A element.
    pub fn to_permutation(&self, x: Element) -> Result<Vec<usize>> {
        if self.label != CartanType::A {
            return Err(CoxeterError::NotTypeA);
        }
        let mut perm: Vec<usize> = (1..=self.rank + 1).collect();
        for &s in self.word(x) {
            perm.swap(s as usize, s as usize + 1);
        }
        Ok(perm)
    }

    pub fn from_permutation(&self, perm: &[usize]) -> Result<Element> {
        if self.label != CartanType::A {
            return Err(CoxeterError::NotTypeA);
        }
        let n = self.rank + 1;
        let bad = || CoxeterError::BadPermutation(format!("{perm:?}"));
        if perm.len() != n {
            return Err(bad());
        }
        let mut seen = vec![false; n + 1];
        for &v in perm {
            if v == 0 || v > n || seen[v] {
                return Err(bad());
            }
            seen[v] = true;
        }
        let mut p = perm.to_vec();
        let mut word = Vec::new();
        while let Some(i) = (0..n - 1).find(|&i| p[i] > p[i + 1]) {
            p.swap(i, i + 1);
            word.push(i);
        }
        word.reverse();
        self.product(&word)
    }

    /// Parses an element: `e`, a 1-based generator word (`"1 2 1"`, `"1,2,1"`,
    /// `"121"` when rank < 10), letters `s t u v` for the first generators, or
    /// (type A only) a one-line permutation such as `"3412"`.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let t = text.trim();
        let bad = || CoxeterError::BadWord(text.to_string());
        if t.is_empty() || t == "e" || t == "1_W" {
            return Ok(self.identity());
        }
        if self.label == CartanType::A && !t.contains([' ', ',']) && t.len() == self.rank + 1 {
            if let Some(perm) = t.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<Vec<_>>>() {
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                if sorted == (1..=self.rank + 1).collect::<Vec<_>>() {
                    return self.from_permutation(&perm);
                }
            }
        }
        let letters = ['s', 't', 'u', 'v'];
        if t.chars().all(|c| letters.contains(&c)) {
            let word: Vec<usize> = t.chars().map(|c| letters.iter().position(|&l| l == c).unwrap()).collect();
            return self.product(&word).map_err(|_| bad());
        }
        let tokens: Vec<&str> = t.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        let digits: Vec<usize> = if tokens.len() == 1 && self.rank < 10 {
            tokens[0].chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(bad)?
        } else {
            tokens.iter().map(|tok| tok.parse::<usize>().ok()).collect::<Option<_>>().ok_or_else(bad)?
        };
        if digits.iter().any(|&d| d == 0 || d > self.rank) {
            return Err(bad());
        }
        let word: Vec<usize> = digits.into_iter().map(|d| d - 1).collect();
        self.product(&word)
    }

    /// ShortLex word as 1-based generator indices.
    pub fn word_one_based(&self, x: Element) -> Vec<usize> {
        self.word(x).iter().map(|&s| s as usize + 1).collect()
    }

    /// Compact display form: `e`, or the 1-based word (`121`, or `1.10.2` when rank >= 10).
    pub fn format_element(&self, x: Element) -> String {
        let w = self.word_one_based(x);
        if w.is_empty() {
            return "e".to_string();
        }
        let sep = if self.rank < 10 { "" } else { "." };
        w.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(sep)
    }
}

/// Square bit matrix; `get(row, col)`.
struct BitMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        BitMatrix { n, words_per_row, bits: vec![0; n * words_per_row] }
    }

    #[inline]
    fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.words_per_row + col / 64] >> (col % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.words_per_row + col / 64] |= 1 << (col % 64);
    }

    fn row(&self, row: usize) -> &[u64] {
        &self.bits[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    fn iter_row(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        self.row(row)
            .iter()
            .enumerate()
            .flat_map(move |(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
            .filter(move |&c| c < n)
    }
}

/// Iterates the set bits of a Bruhat row.
pub fn iter_bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &bits)| {
        let mut b = bits;
        std::iter::from_fn(move || {
            if b == 0 {
                None
            } else {
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(w * 64 + t)
            }
        })
    })
}

fn positive_roots(cartan: &[Vec<i32>], cap: usize) -> Result<Vec<Vec<i32>>> {
    let rank = cartan.len();
    let mut roots: Vec<Vec<i32>> = Vec::new();
    let mut seen: HashMap<Vec<i32>, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..rank {
        let mut e = vec![0; rank];
        e[i] = 1;
        seen.insert(e.clone(), ());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for (i, row) in cartan.iter().enumerate() {
            let pairing: i32 = row.iter().zip(&beta).map(|(a, b)| a * b).sum();
            if pairing == 0 {
                continue;
            }
            let mut image = beta.clone();
            image[i] -= pairing;
            if image.iter().all(|&c| c >= 0) && image.iter().any(|&c| c > 0) && !seen.contains_key(&image) {
                seen.insert(image.clone(), ());
                queue.push_back(image);
            }
        }
        roots.push(beta);
        if roots.len() > cap {
            return Err(CoxeterError::TooLarge { cap });
        }
    }
    roots.sort_by(|a, b| {
        let ha: i32 = a.iter().sum();
        let hb: i32 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    Ok(roots)
}

struct Enumeration {
    actions: Vec<i32>,
    lengths: Vec<u32>,
    words: Vec<Vec<u8>>,
    right: Vec<u32>,
    left: Vec<u32>,
    inverses: Vec<u32>,
}

/// Breadth-first closure from the identity, deduplicated on action matrices,
/// then reindexed into length-then-ShortLex order.
fn enumerate(cartan: &[Vec<i32>], cap: usize) -> Result<Enumeration> {
    let r = cartan.len();
    let r2 = r * r;
    let mut identity = vec![0i32; r2];
    for i in 0..r {
        identity[i * r + i] = 1;
    }
    let mut index: HashMap<Box<[i32]>, u32> = HashMap::new();
    let mut actions: Vec<i32> = identity.clone();
    let mut lengths: Vec<u32> = vec![0];
    index.insert(identity.into_boxed_slice(), 0);
    let mut right: Vec<u32> = Vec::new();

    let mut cursor = 0usize;
    while cursor < lengths.len() {
        let base = actions[cursor * r2..(cursor + 1) * r2].to_vec();
        for k in 0..r {
            // column j of w*s_k is w(alpha_j) - a_kj w(alpha_k)
            let mut m = base.clone();
            for j in 0..r {
                let a = cartan[k][j];
                if a != 0 && j != k {
                    for i in 0..r {
                        m[i * r + j] -= a * base[i * r + k];
                    }
                }
            }
            for i in 0..r {
                m[i * r + k] = -base[i * r + k];
            }
            let next = match index.get(m.as_slice()) {
                Some(&j) => j,
                None => {
                    let j = lengths.len() as u32;
                    if lengths.len() >= cap {
                        return Err(CoxeterError::TooLarge { cap });
                    }
                    actions.extend_from_slice(&m);
                    lengths.push(lengths[cursor] + 1);
                    index.insert(m.into_boxed_slice(), j);
                    j
                }
            };
            right.push(next);
        }
        cursor += 1;
    }
    let n = lengths.len();

    let mut left = vec![0u32; n * r];
    for w in 0..n {
        let base = &actions[w * r2..(w + 1) * r2];
        for k in 0..r {
            // s_k(v) = v - <alpha_k^vee, v> alpha_k, column by column
            let mut m = base.to_vec();
            for j in 0..r {
                let c: i32 = (0..r).map(|i| cartan[k][i] * base[i * r + j]).sum();
                m[k * r + j] -= c;
            }
            left[w * r + k] = *index.get(m.as_slice()).expect("group not closed under left multiplication");
        }
    }

    // ShortLex: first letter is the smallest left descent.
    let mut words: Vec<Vec<u8>> = vec![Vec::new(); n];
    for w in 1..n {
        let l = lengths[w];
        let s = (0..r).find(|&k| lengths[left[w * r + k] as usize] < l).expect("nonidentity has a left descent");
        let rest = &words[left[w * r + s] as usize];
        let mut word = Vec::with_capacity(rest.len() + 1);
        word.push(s as u8);
        word.extend_from_slice(rest);
        words[w] = word;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| lengths[a].cmp(&lengths[b]).then_with(|| words[a].cmp(&words[b])));
    let mut new_of = vec![0u32; n];
    for (new, &old) in order.iter().enumerate() {
        new_of[old] = new as u32;
    }

    let mut actions2 = Vec::with_capacity(n * r2);
    let mut lengths2 = Vec::with_capacity(n);
    let mut words2 = Vec::with_capacity(n);
    let mut right2 = vec![0u32; n * r];
    let mut left2 = vec![0u32; n * r];
    for (new, &old) in order.iter().enumerate() {
        actions2.extend_from_slice(&actions[old * r2..(old + 1) * r2]);
        lengths2.push(lengths[old]);
        words2.push(std::mem::take(&mut words[old]));
        for k in 0..r {
            right2[new * r + k] = new_of[right[old * r + k] as usize];
            left2[new * r + k] = new_of[left[old * r + k] as usize];
        }
    }

    let mut inverses = vec![0u32; n];
    for w in 0..n {
        let inv = words2[w].iter().rev().fold(0usize, |acc, &s| right2[acc * r + s as usize] as usize);
        inverses[w] = inv as u32;
    }

    Ok(Enumeration { actions: actions2, lengths: lengths2, words: words2, right: right2, left: left2, inverses })
}
