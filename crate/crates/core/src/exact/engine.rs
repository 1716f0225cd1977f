//! Memoized 6j evaluation and the 9j, 12j and 15j contractions.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, OnceLock, RwLock};

use super::racah;
use super::surd::Surd;
use crate::halfint::triad_twice;

/// Memo table settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CacheConfig {
    pub enabled: bool,
    /// Once this many entries are stored, new results are computed but not kept.
    pub max_entries: Option<usize>,
}

impl Default for CacheConfig {
    fn default() -> Self {
        CacheConfig {
            enabled: true,
            max_entries: None,
        }
    }
}

impl CacheConfig {
    pub fn disabled() -> Self {
        CacheConfig {
            enabled: false,
            max_entries: None,
        }
    }

    pub fn capped(max_entries: usize) -> Self {
        CacheConfig {
            enabled: true,
            max_entries: Some(max_entries),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineConfig {
    pub six_j: CacheConfig,
    pub nine_j: CacheConfig,
}

struct Memo<K> {
    map: RwLock<HashMap<K, Arc<Surd>>>,
    cap: Option<usize>,
}

impl<K: Hash + Eq + Copy> Memo<K> {
    fn new(cfg: CacheConfig) -> Option<Self> {
        cfg.enabled.then(|| Memo {
            map: RwLock::new(HashMap::new()),
            cap: cfg.max_entries,
        })
    }

    fn get_or_insert_with(&self, key: K, f: impl FnOnce() -> Surd) -> Arc<Surd> {
        if let Some(v) = self.map.read().unwrap().get(&key) {
            return Arc::clone(v);
        }
        let v = Arc::new(f());
        let mut map = self.map.write().unwrap();
        if self.cap.is_none_or(|cap| map.len() < cap) {
            map.entry(key).or_insert_with(|| Arc::clone(&v));
        }
        v
    }

    fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }
}

/// Exact evaluator. All methods take and return twice-values.
///
/// One engine may be shared freely across threads.
pub struct Engine {
    six: Option<Memo<[u32; 6]>>,
    nine: Option<Memo<[u32; 9]>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(EngineConfig::default())
    }
}

impl Engine {
    pub fn new(cfg: EngineConfig) -> Self {
        Engine {
            six: Memo::new(cfg.six_j),
            nine: Memo::new(cfg.nine_j),
        }
    }

    /// Engine with no memo tables at all.
    pub fn uncached() -> Self {
        Engine::new(EngineConfig {
            six_j: CacheConfig::disabled(),
            nine_j: CacheConfig::disabled(),
        })
    }

    /// Process-wide engine with unbounded caches.
    pub fn global() -> &'static Engine {
        static GLOBAL: OnceLock<Engine> = OnceLock::new();
        GLOBAL.get_or_init(Engine::default)
    }

    /// Number of cached 6j and 9j entries.
    pub fn cache_sizes(&self) -> (usize, usize) {
        (
            self.six.as_ref().map_or(0, Memo::len),
            self.nine.as_ref().map_or(0, Memo::len),
        )
    }

    pub fn six_j(&self, t: [u32; 6]) -> Arc<Surd> {
        match &self.six {
            Some(memo) => {
                let key = canonical_six_j(t);
                memo.get_or_insert_with(key, || racah::six_j(key))
            }
            None => Arc::new(racah::six_j(t)),
        }
    }

    /// `{a b c; d e f; g h i}` as `Σ_x (-1)^{2x} [x] {a b c; f i x}{d e f; b x h}{g h i; x a d}`.
    pub fn nine_j(&self, t: [u32; 9]) -> Arc<Surd> {
        match &self.nine {
            Some(memo) => memo.get_or_insert_with(t, || self.nine_j_sum(t)),
            None => Arc::new(self.nine_j_sum(t)),
        }
    }

    fn nine_j_sum(&self, t: [u32; 9]) -> Surd {
        let [a, b, c, d, e, f, g, h, i] = t;
        let lines = [
            (a, b, c),
            (d, e, f),
            (g, h, i),
            (a, d, g),
            (b, e, h),
            (c, f, i),
        ];
        if !lines.iter().all(|&(x, y, z)| triad_twice(x, y, z)) {
            return Surd::zero();
        }
        let lo = a.abs_diff(i).max(b.abs_diff(f)).max(d.abs_diff(h));
        let hi = (a + i).min(b + f).min(d + h);
        let mut acc = Surd::zero();
        let mut x = lo;
        while x <= hi {
            let p = self.six_j([a, b, c, f, i, x]);
            if !p.is_zero() {
                let q = self.six_j([d, e, f, b, x, h]);
                if !q.is_zero() {
                    let r = self.six_j([g, h, i, x, a, d]);
                    if !r.is_zero() {
                        let w = i64::from(x + 1) * parity(x);
                        acc.add_assign(&Surd::product(&[&p, &q, &r], w));
                    }
                }
            }
            x += 2;
        }
        acc
    }

    /// 12j of the first kind, entries read row-major from
    /// `{s1 j2 j12 j125; j3 j4 j34 j135; j13 j24 s5 j6}`.
    pub fn twelve_j(&self, t: [u32; 12]) -> Surd {
        let [s1, j2, j12, j125, j3, j4, j34, j135, j13, j24, s5, j6] = t;
        let lines = [
            (s1, j2, j12),
            (j3, j4, j34),
            (s1, j3, j13),
            (j2, j4, j24),
            (s5, j12, j125),
            (s5, j13, j135),
            (j125, j34, j6),
            (j135, j24, j6),
        ];
        if !lines.iter().all(|&(x, y, z)| triad_twice(x, y, z)) {
            return Surd::zero();
        }
        let sign = phase(2 * s5 + 2 * j6 + j12 + j34 + j13 + j24);
        let mut acc = Surd::zero();
        let mut x = j6.abs_diff(s5);
        while x <= j6 + s5 {
            let p = self.six_j([s5, j12, j125, j34, j6, x]);
            if !p.is_zero() {
                let q = self.six_j([s5, j13, j135, j24, j6, x]);
                if !q.is_zero() {
                    let r = self.nine_j([s1, j2, j12, j3, j4, j34, j13, j24, x]);
                    if !r.is_zero() {
                        let w = i64::from(x + 1) * sign;
                        acc.add_assign(&Surd::product(&[&p, &q, &r], w));
                    }
                }
            }
            x += 2;
        }
        acc
    }

    /// 15j of the first kind, entries read row-major from
    /// `{j1 j2 j12 j125 j1256; s3 j4 j34 j135 j1356; j13 j24 s5 s6 j7}`.
    pub fn fifteen_j(&self, t: [u32; 15]) -> Surd {
        let [j1, j2, j12, j125, j1256, s3, j4, j34, j135, j1356, j13, j24, s5, s6, j7] = t;
        let lines = [
            (j1, j2, j12),
            (s3, j4, j34),
            (j1, s3, j13),
            (j2, j4, j24),
            (s5, j12, j125),
            (s5, j13, j135),
            (s6, j125, j1256),
            (s6, j135, j1356),
            (j1256, j34, j7),
            (j1356, j24, j7),
        ];
        if !lines.iter().all(|&(x, y, z)| triad_twice(x, y, z)) {
            return Surd::zero();
        }
        let fixed = 2 * s6 + 2 * s5 + j125 + j135 + 2 * j34 + 2 * j24 + j12 + j13 + 2 * j7;
        let mut acc = Surd::zero();
        let mut x = j7.abs_diff(s6);
        while x <= j7 + s6 {
            let p = self.six_j([s6, j125, j1256, j34, j7, x]);
            let q = self.six_j([s6, j135, j1356, j24, j7, x]);
            if !p.is_zero() && !q.is_zero() {
                let sign = phase(fixed + 2 * x);
                let mut z = x.abs_diff(s5);
                while z <= x + s5 {
                    let u = self.six_j([s5, j12, j125, j34, x, z]);
                    let v = self.six_j([s5, j13, j135, j24, x, z]);
                    if !u.is_zero() && !v.is_zero() {
                        let r = self.nine_j([j1, j2, j12, s3, j4, j34, j13, j24, z]);
                        if !r.is_zero() {
                            let w = i64::from((x + 1) * (z + 1)) * sign;
                            acc.add_assign(&Surd::product(&[&p, &q, &u, &v, &r], w));
                        }
                    }
                    z += 2;
                }
            }
            x += 2;
        }
        acc
    }
}

/// `(-1)^{2x}` for twice-value `x`.
#[inline]
fn parity(x: u32) -> i64 {
    if x % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^n` where `twice_n = 2n` must be even.
#[inline]
fn phase(twice_n: u32) -> i64 {
    assert!(twice_n % 2 == 0, "non-integer phase exponent {twice_n}/2");
    if (twice_n / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Lexicographically smallest image of `{a b c; d e f}` under the 24
/// classical symmetries.
pub(crate) fn canonical_six_j(t: [u32; 6]) -> [u32; 6] {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    // Flip upper/lower in no column or in exactly two.
    const FLIPS: [[bool; 3]; 4] = [
        [false, false, false],
        [true, true, false],
        [true, false, true],
        [false, true, true],
    ];
    let cols = [(t[0], t[3]), (t[1], t[4]), (t[2], t[5])];
    let mut best = t;
    for flip in FLIPS {
        let c: [(u32, u32); 3] =
            std::array::from_fn(|k| if flip[k] { (cols[k].1, cols[k].0) } else { cols[k] });
        for p in PERMS {
            let cand = [c[p[0]].0, c[p[1]].0, c[p[2]].0, c[p[0]].1, c[p[1]].1, c[p[2]].1];
            if cand < best {
                best = cand;
            }
        }
    }
    best
}
