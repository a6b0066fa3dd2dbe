//! Rational Dyck paths.
//!
//! An `a,b`-Dyck path runs from `(0,0)` to `(b,a)` with unit north and east
//! steps and stays strictly above the line `y = a x / b` away from its
//! endpoints. Paths are stored as run vectors: `runs[x]` is the number of
//! north steps taken on the vertical line at x-coordinate `x`, each column
//! being followed by one east step. When `a < b` the last column can never
//! hold a north step, so the vector has `b - 1` entries and the path is
//! `N^{r_1} E N^{r_2} E ... N^{r_{b-1}} E E`. For `a > b` (used only by the
//! homogeneous construction) the vector has `b` entries.
//!
//! All slope comparisons are done by integer cross-multiplication.

pub(crate) mod counts;

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use counts::{catalan, kreweras, kreweras_vectors, narayana, CountError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("slope parameters must be positive, got ({a},{b})")]
    NonPositive { a: u32, b: u32 },
    #[error("slope ({a},{b}) is not coprime")]
    NotCoprime { a: u32, b: u32 },
    #[error("operation requires a < b, got ({a},{b})")]
    NotProper { a: u32, b: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("run vector has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("run vector sums to {got}, expected {expected}")]
    WrongTotal { expected: u64, got: u64 },
    #[error("path dips below the diagonal at x = {x}")]
    BelowDiagonal { x: u32 },
    #[error("step word has {north} north and {east} east steps, expected {a} and {b}")]
    WrongStepCount { north: usize, east: usize, a: u32, b: u32 },
    #[error("cannot parse run vector: {0}")]
    Parse(String),
    #[error(transparent)]
    Slope(#[from] SlopeError),
}

/// A coprime pair `(a, b)`; the path ends at `(b, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Slope {
    a: u32,
    b: u32,
}

impl Slope {
    pub fn new(a: u32, b: u32) -> Result<Self, SlopeError> {
        if a == 0 || b == 0 {
            return Err(SlopeError::NonPositive { a, b });
        }
        if a.gcd(&b) != 1 {
            return Err(SlopeError::NotCoprime { a, b });
        }
        Ok(Slope { a, b })
    }

    /// A slope with `a < b`, as required by everything built on `NC(a,b)`.
    pub fn proper(a: u32, b: u32) -> Result<Self, SlopeError> {
        Self::new(a, b)?.require_proper()
    }

    pub fn require_proper(self) -> Result<Self, SlopeError> {
        if self.a < self.b {
            Ok(self)
        } else {
            Err(SlopeError::NotProper { a: self.a, b: self.b })
        }
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn is_proper(&self) -> bool {
        self.a < self.b
    }

    /// Number of entries in a run vector for this slope.
    pub fn columns(&self) -> usize {
        if self.is_proper() {
            self.b as usize - 1
        } else {
            self.b as usize
        }
    }

    /// `ceil(x * a / b)`, the least height a path may have after `x` east steps.
    pub fn ceil_height(&self, x: u64) -> u64 {
        (x * self.a as u64).div_ceil(self.b as u64)
    }

    /// Every coprime pair `a < b` with `b <= max_b`, ordered by `b` then `a`.
    pub fn all_proper_up_to(max_b: u32) -> Vec<Slope> {
        let mut out = Vec::new();
        for b in 2..=max_b {
            for a in 1..b {
                if let Ok(s) = Slope::proper(a, b) {
                    out.push(s);
                }
            }
        }
        out
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    North,
    East,
}

/// A lattice point `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: u32,
    pub y: u32,
}

impl Point {
    pub fn new(x: u32, y: u32) -> Self {
        Point { x, y }
    }
}

/// The endpoint pair `(i, j)` of a laser fired from a valley with
/// x-coordinate `i` that lands inside the east step with west x-coordinate `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Laser {
    pub i: u32,
    pub j: u32,
}

impl Laser {
    pub fn new(i: u32, j: u32) -> Self {
        Laser { i, j }
    }
}

impl fmt::Display for Laser {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct LaserSet(BTreeSet<Laser>);

impl LaserSet {
    pub fn new() -> Self {
        LaserSet(BTreeSet::new())
    }

    pub fn insert(&mut self, laser: Laser) -> bool {
        self.0.insert(laser)
    }

    pub fn contains(&self, laser: &Laser) -> bool {
        self.0.contains(laser)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Laser> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &LaserSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn extend(&mut self, other: &LaserSet) {
        self.0.extend(other.0.iter().copied());
    }
}

impl FromIterator<Laser> for LaserSet {
    fn from_iter<I: IntoIterator<Item = Laser>>(iter: I) -> Self {
        LaserSet(iter.into_iter().collect())
    }
}

impl fmt::Display for LaserSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

/// Where a slope-`a/b` ray fired from a path point first meets the path:
/// the east step with west x-coordinate `east_x`, at height `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct LaserHit {
    pub east_x: u32,
    pub y: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PathJson", into = "PathJson")]
pub struct DyckPath {
    slope: Slope,
    runs: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    a: u32,
    b: u32,
    runs: Vec<u32>,
}

impl TryFrom<PathJson> for DyckPath {
    type Error = PathError;

    fn try_from(j: PathJson) -> Result<Self, PathError> {
        validate_path(Slope::new(j.a, j.b)?, &j.runs)
    }
}

impl From<DyckPath> for PathJson {
    fn from(p: DyckPath) -> Self {
        PathJson { a: p.slope.a, b: p.slope.b, runs: p.runs }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.b, self.a).cmp(&(other.b, other.a))
    }
}

/// Checks a run vector against the Dyck condition.
pub fn validate_path(slope: Slope, runs: &[u32]) -> Result<DyckPath, PathError> {
    let expected = slope.columns();
    if runs.len() != expected {
        return Err(PathError::WrongLength { expected, got: runs.len() });
    }
    let total: u64 = runs.iter().map(|&r| r as u64).sum();
    if total != slope.a as u64 {
        return Err(PathError::WrongTotal { expected: slope.a as u64, got: total });
    }
    let mut height = 0u64;
    for (col, &r) in runs.iter().enumerate() {
        height += r as u64;
        let x = col as u64 + 1;
        if height < slope.ceil_height(x) {
            return Err(PathError::BelowDiagonal { x: x as u32 });
        }
    }
    Ok(DyckPath { slope, runs: runs.to_vec() })
}

impl DyckPath {
    pub fn new(slope: Slope, runs: &[u32]) -> Result<Self, PathError> {
        validate_path(slope, runs)
    }

    /// Parses the comma-separated run vector form, e.g. `"1,1,0,2,1,0,0"`.
    pub fn parse(slope: Slope, text: &str) -> Result<Self, PathError> {
        let runs = parse_u32_list(text).map_err(PathError::Parse)?;
        validate_path(slope, &runs)
    }

    /// The path `N^a E^b`.
    pub fn top(slope: Slope) -> Self {
        let mut runs = vec![0; slope.columns()];
        runs[0] = slope.a;
        DyckPath { slope, runs }
    }

    pub fn from_steps(slope: Slope, steps: &[Step]) -> Result<Self, PathError> {
        let north = steps.iter().filter(|s| **s == Step::North).count();
        let east = steps.len() - north;
        if north != slope.a as usize || east != slope.b as usize {
            return Err(PathError::WrongStepCount { north, east, a: slope.a, b: slope.b });
        }
        if steps.last() == Some(&Step::North) {
            return Err(PathError::BelowDiagonal { x: slope.b });
        }
        let mut cols = vec![0u32; slope.b as usize];
        let mut x = 0usize;
        for s in steps {
            match s {
                Step::North => cols[x] += 1,
                Step::East => x += 1,
            }
        }
        let cols_len = slope.columns();
        if cols[cols_len..].iter().any(|&c| c > 0) {
            return Err(PathError::BelowDiagonal { x: cols_len as u32 });
        }
        cols.truncate(cols_len);
        validate_path(slope, &cols)
    }

    pub fn slope(&self) -> Slope {
        self.slope
    }

    pub fn runs(&self) -> &[u32] {
        &self.runs
    }

    pub fn steps(&self) -> Vec<Step> {
        let mut out = Vec::with_capacity((self.slope.a + self.slope.b) as usize);
        for &r in &self.runs {
            out.extend(std::iter::repeat_n(Step::North, r as usize));
            out.push(Step::East);
        }
        while out.len() < (self.slope.a + self.slope.b) as usize {
            out.push(Step::East);
        }
        out
    }

    /// The step word, e.g. `NENEENNENEEEE`.
    pub fn word(&self) -> String {
        self.steps()
            .into_iter()
            .map(|s| match s {
                Step::North => 'N',
                Step::East => 'E',
            })
            .collect()
    }

    /// `heights()[x]` is the height of the path after the north steps on column `x`.
    pub fn heights(&self) -> Vec<u32> {
        self.runs
            .iter()
            .scan(0u32, |h, &r| {
                *h += r;
                Some(*h)
            })
            .collect()
    }

    /// Interior valleys, west to east. The origin is never a valley.
    pub fn valleys(&self) -> Vec<Point> {
        let mut out = Vec::new();
        let mut height = 0;
        for (x, &r) in self.runs.iter().enumerate() {
            if x > 0 && r > 0 {
                out.push(Point::new(x as u32, height));
            }
            height += r;
        }
        out
    }

    pub fn vertical_run_sizes(&self) -> Vec<u32> {
        self.runs.iter().copied().filter(|&r| r > 0).collect()
    }

    /// First column whose height exceeds `y`, or `b` if none does.
    fn right_end(&self, heights: &[u32], y: u32) -> u32 {
        let x = heights.partition_point(|&h| h <= y);
        if x == heights.len() {
            self.slope.b
        } else {
            x as u32
        }
    }

    /// Fires a slope-`a/b` ray northeast from `from`, a point of the path that
    /// lies strictly above the diagonal, and returns the east step it lands on.
    pub(crate) fn fire(&self, heights: &[u32], from: Point) -> LaserHit {
        let (a, b) = (self.slope.a as u64, self.slope.b as u64);
        for y in from.y + 1..=self.slope.a {
            let right = self.right_end(heights, y) as u64;
            // the ray reaches height y at x = from.x + (y - from.y) * b / a
            let num = a * from.x as u64 + (y - from.y) as u64 * b;
            if num < a * right {
                return LaserHit { east_x: (num / a) as u32, y };
            }
        }
        unreachable!("ray from {from:?} must land on {self}")
    }

    /// The laser fired from `valley`, or `None` if `valley` is not a valley of this path.
    pub fn laser_endpoint(&self, valley: Point) -> Option<Laser> {
        if !self.valleys().contains(&valley) {
            return None;
        }
        let hit = self.fire(&self.heights(), valley);
        Some(Laser::new(valley.x, hit.east_x))
    }

    pub fn laser_set(&self) -> LaserSet {
        let heights = self.heights();
        self.valleys()
            .into_iter()
            .map(|v| Laser::new(v.x, self.fire(&heights, v).east_x))
            .collect()
    }

    /// Replaces every north step with `NE`, giving an `a,(a+b)`-Dyck path
    /// with exactly `a` vertical runs.
    pub fn double(&self) -> DyckPath {
        let slope = Slope::new(self.slope.a, self.slope.a + self.slope.b)
            .expect("a and a+b are coprime whenever a and b are");
        let mut steps = Vec::new();
        for s in self.steps() {
            steps.push(s);
            if s == Step::North {
                steps.push(Step::East);
            }
        }
        DyckPath::from_steps(slope, &steps).expect("doubling preserves the Dyck condition")
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.runs)
    }
}

pub(crate) fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    for (k, x) in xs.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

pub(crate) fn parse_u32_list(text: &str) -> Result<Vec<u32>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

pub fn double_path(path: &DyckPath) -> DyckPath {
    path.double()
}

/// All Dyck paths of the given slope in lexicographic order of run vectors.
pub fn enumerate_paths(slope: Slope) -> Vec<DyckPath> {
    let cols = slope.columns();
    let mut out = Vec::new();
    let mut runs = vec![0u32; cols];
    extend_paths(slope, 0, 0, &mut runs, &mut out);
    out
}

fn extend_paths(slope: Slope, col: usize, height: u32, runs: &mut Vec<u32>, out: &mut Vec<DyckPath>) {
    let cols = runs.len();
    if col == cols {
        if height == slope.a {
            out.push(DyckPath { slope, runs: runs.clone() });
        }
        return;
    }
    let floor = slope.ceil_height(col as u64 + 1) as u32;
    let lo = floor.saturating_sub(height);
    for r in lo..=slope.a - height {
        runs[col] = r;
        extend_paths(slope, col + 1, height + r, runs, out);
    }
    runs[col] = 0;
}

/// The gaps `floor(r b / a)` for `r = 1..a-1`.
fn admissible_gaps(slope: Slope) -> BTreeSet<u32> {
    (1..slope.a).map(|r| r * slope.b / slope.a).collect()
}

pub fn is_admissible(slope: Slope, i: u32, j: u32) -> bool {
    i >= 1 && i < j && j < slope.b && admissible_gaps(slope).contains(&(j - i))
}

/// `A(a,b)`: every pair that occurs as a laser of some path.
pub fn admissible_lasers(slope: Slope) -> Result<LaserSet, SlopeError> {
    let slope = slope.require_proper()?;
    let mut set = LaserSet::new();
    for g in admissible_gaps(slope) {
        for i in 1..slope.b {
            if i + g < slope.b {
                set.insert(Laser::new(i, i + g));
            }
        }
    }
    Ok(set)
}
