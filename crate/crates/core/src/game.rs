//! Game graphs: typed vertices `1..=n` with the 0-sink at `n-1` and the 1-sink at `n`.
//!
//! A [`Game`] can only be obtained through validation, either from a
//! [`RawGame`] or by parsing the text format:
//!
//! ```text
//! ssg <n> <start>
//! <id> <max|min|avg> <child1> <child2>     # one line per vertex 1..n-2
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Min,
    Max,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Min => "min",
            Player::Max => "max",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Max,
    Min,
    Avg,
    Sink0,
    Sink1,
}

impl VertexKind {
    pub fn owner(self) -> Option<Player> {
        match self {
            VertexKind::Max => Some(Player::Max),
            VertexKind::Min => Some(Player::Min),
            _ => None,
        }
    }

    pub fn is_sink(self) -> bool {
        matches!(self, VertexKind::Sink0 | VertexKind::Sink1)
    }
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexKind::Max => "max",
            VertexKind::Min => "min",
            VertexKind::Avg => "avg",
            VertexKind::Sink0 => "sink0",
            VertexKind::Sink1 => "sink1",
        })
    }
}

impl FromStr for VertexKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max" => Ok(VertexKind::Max),
            "min" => Ok(VertexKind::Min),
            "avg" => Ok(VertexKind::Avg),
            other => Err(format!("unknown vertex kind `{other}` (expected max, min or avg)")),
        }
    }
}

/// One violated structural invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("a game needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("start out of range: {start} not in 1..={n}")]
    StartOutOfRange { start: usize, n: usize },
    #[error("kind table has {got} entries for {n} vertices")]
    KindTableLength { n: usize, got: usize },
    #[error("vertex {vertex} must be the {expected}")]
    SinkMisplaced { vertex: usize, expected: VertexKind },
    #[error("vertex {vertex} is a sink but only n-1 and n may be sinks")]
    ExtraSink { vertex: usize },
    #[error("sink has children (vertex {vertex})")]
    SinkHasChildren { vertex: usize },
    #[error("vertex {vertex} has {count} children, expected 2")]
    WrongChildCount { vertex: usize, count: usize },
    #[error("child out of range: vertex {vertex} has child {child}")]
    ChildOutOfRange { vertex: usize, child: usize },
    #[error("children not distinct: vertex {vertex} has child {child} twice")]
    EqualChildren { vertex: usize, child: usize },
    #[error("vertex id out of range: {vertex}")]
    VertexOutOfRange { vertex: usize },
    #[error("duplicate vertex line for vertex {vertex}")]
    DuplicateVertex { vertex: usize },
    #[error("missing vertex line for vertex {vertex}")]
    MissingVertex { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameFileError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid game at line {line}: {error}")]
    Invalid { line: usize, error: ValidationError },
}

/// Unchecked game description. `kinds[v-1]` and `children[v-1]` describe vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGame {
    pub n: usize,
    pub start: usize,
    pub kinds: Vec<VertexKind>,
    pub children: Vec<Vec<usize>>,
}

impl RawGame {
    pub fn validate(&self) -> Result<(), ValidationError> {
        let n = self.n;
        if n < 3 {
            return Err(ValidationError::TooFewVertices(n));
        }
        if self.kinds.len() != n || self.children.len() != n {
            return Err(ValidationError::KindTableLength { n, got: self.kinds.len().min(self.children.len()) });
        }
        if self.start < 1 || self.start > n {
            return Err(ValidationError::StartOutOfRange { start: self.start, n });
        }
        for v in 1..=n {
            let kind = self.kinds[v - 1];
            let children = &self.children[v - 1];
            let expected = if v == n - 1 {
                Some(VertexKind::Sink0)
            } else if v == n {
                Some(VertexKind::Sink1)
            } else {
                None
            };
            match expected {
                Some(sink) => {
                    if kind != sink {
                        return Err(ValidationError::SinkMisplaced { vertex: v, expected: sink });
                    }
                    if !children.is_empty() {
                        return Err(ValidationError::SinkHasChildren { vertex: v });
                    }
                }
                None => {
                    if kind.is_sink() {
                        return Err(ValidationError::ExtraSink { vertex: v });
                    }
                    if children.len() != 2 {
                        return Err(ValidationError::WrongChildCount { vertex: v, count: children.len() });
                    }
                    for &c in children {
                        if c < 1 || c > n {
                            return Err(ValidationError::ChildOutOfRange { vertex: v, child: c });
                        }
                    }
                    if children[0] == children[1] {
                        return Err(ValidationError::EqualChildren { vertex: v, child: children[0] });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A validated simple stochastic game. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Game {
    n: usize,
    start: usize,
    kinds: Vec<VertexKind>,
    /// Children of the non-sink vertices `1..=n-2`.
    children: Vec<[usize; 2]>,
}

impl TryFrom<RawGame> for Game {
    type Error = ValidationError;

    fn try_from(raw: RawGame) -> Result<Self, Self::Error> {
        raw.validate()?;
        let children = raw.children[..raw.n - 2].iter().map(|c| [c[0], c[1]]).collect();
        Ok(Game { n: raw.n, start: raw.start, kinds: raw.kinds, children })
    }
}

impl Game {
    /// Builds a game from the descriptions of vertices `1..=n-2`; the sinks are implicit.
    pub fn new(n: usize, start: usize, vertices: &[(VertexKind, [usize; 2])]) -> Result<Game, ValidationError> {
        if n < 3 {
            return Err(ValidationError::TooFewVertices(n));
        }
        if vertices.len() != n - 2 {
            return Err(ValidationError::MissingVertex { vertex: vertices.len() + 1 });
        }
        let mut kinds: Vec<VertexKind> = vertices.iter().map(|(k, _)| *k).collect();
        let mut children: Vec<Vec<usize>> = vertices.iter().map(|(_, c)| c.to_vec()).collect();
        kinds.extend([VertexKind::Sink0, VertexKind::Sink1]);
        children.extend([Vec::new(), Vec::new()]);
        Game::try_from(RawGame { n, start, kinds, children })
    }

    pub fn to_raw(&self) -> RawGame {
        let mut children: Vec<Vec<usize>> = self.children.iter().map(|c| c.to_vec()).collect();
        children.extend([Vec::new(), Vec::new()]);
        RawGame { n: self.n, start: self.start, kinds: self.kinds.clone(), children }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn sink0(&self) -> usize {
        self.n - 1
    }

    pub fn sink1(&self) -> usize {
        self.n
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v - 1]
    }

    /// Children of `v`; empty for sinks.
    pub fn children(&self, v: usize) -> &[usize] {
        if v <= self.n - 2 {
            &self.children[v - 1]
        } else {
            &[]
        }
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn non_sinks(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n - 2
    }

    /// Vertices owned by `player`, ascending.
    pub fn owned_by(&self, player: Player) -> impl Iterator<Item = usize> + '_ {
        self.non_sinks().filter(move |&v| self.kind(v).owner() == Some(player))
    }

    pub fn count(&self, kind: VertexKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }

    pub fn has_kind(&self, kind: VertexKind) -> bool {
        self.kinds.contains(&kind)
    }

    /// All edges `(i, j)` in vertex order, left child first.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.non_sinks().flat_map(move |v| self.children(v).iter().map(move |&c| (v, c)))
    }

    pub fn edge_count(&self) -> usize {
        2 * (self.n - 2)
    }

    /// Same graph with a different start vertex.
    pub fn with_start(&self, start: usize) -> Result<Game, ValidationError> {
        if start < 1 || start > self.n {
            return Err(ValidationError::StartOutOfRange { start, n: self.n });
        }
        Ok(Game { start, ..self.clone() })
    }
}

impl fmt::Display for Game {
    /// Serializes in the game file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ssg {} {}", self.n, self.start)?;
        for v in self.non_sinks() {
            let [a, b] = self.children[v - 1];
            writeln!(f, "{v} {} {a} {b}", self.kind(v))?;
        }
        Ok(())
    }
}

impl FromStr for Game {
    type Err = GameFileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_game(s)
    }
}

/// Whitespace-separated tokens of a line with their 1-based columns, comments stripped.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let content = match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &content[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &content[s..]));
    }
    out.into_iter().map(|(i, t)| (content[..i].chars().count() + 1, t)).collect()
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> GameFileError {
    GameFileError::Syntax { line, column, message: message.into() }
}

fn number(line: usize, (column, tok): (usize, &str), what: &str) -> Result<usize, GameFileError> {
    tok.parse::<usize>().map_err(|_| syntax(line, column, format!("expected {what}, found `{tok}`")))
}

/// Parses and validates a game file.
pub fn parse_game(text: &str) -> Result<Game, GameFileError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut kinds: Vec<Option<VertexKind>> = Vec::new();
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut last_line = 0;

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        let Some((n, _, _)) = header else {
            if toks[0].1 != "ssg" {
                return Err(syntax(lineno, toks[0].0, format!("expected header `ssg <n> <start>`, found `{}`", toks[0].1)));
            }
            if toks.len() != 3 {
                let col = toks.get(3).map_or(line.len() + 1, |t| t.0);
                return Err(syntax(lineno, col, "header must be `ssg <n> <start>`"));
            }
            let n = number(lineno, toks[1], "vertex count")?;
            let start = number(lineno, toks[2], "start vertex")?;
            if n < 3 {
                return Err(GameFileError::Invalid { line: lineno, error: ValidationError::TooFewVertices(n) });
            }
            header = Some((n, start, lineno));
            kinds = vec![None; n];
            children = vec![Vec::new(); n];
            continue;
        };
        if toks.len() != 4 {
            let col = toks.get(4).map_or(line.len() + 1, |t| t.0);
            return Err(syntax(lineno, col, "vertex line must be `<id> <max|min|avg> <child1> <child2>`"));
        }
        let id = number(lineno, toks[0], "vertex id")?;
        let kind: VertexKind = toks[1].1.parse().map_err(|m: String| syntax(lineno, toks[1].0, m))?;
        let c1 = number(lineno, toks[2], "child id")?;
        let c2 = number(lineno, toks[3], "child id")?;
        let invalid = |error| GameFileError::Invalid { line: lineno, error };
        if id < 1 || id > n {
            return Err(invalid(ValidationError::VertexOutOfRange { vertex: id }));
        }
        if id >= n - 1 {
            return Err(invalid(ValidationError::SinkHasChildren { vertex: id }));
        }
        if kinds[id - 1].is_some() {
            return Err(invalid(ValidationError::DuplicateVertex { vertex: id }));
        }
        kinds[id - 1] = Some(kind);
        children[id - 1] = vec![c1, c2];
    }

    let Some((n, start, header_line)) = header else {
        return Err(syntax(last_line.max(1), 1, "missing header `ssg <n> <start>`"));
    };
    if let Some(missing) = (1..=n - 2).find(|&v| kinds[v - 1].is_none()) {
        return Err(GameFileError::Invalid { line: last_line, error: ValidationError::MissingVertex { vertex: missing } });
    }
    kinds[n - 2] = Some(VertexKind::Sink0);
    kinds[n - 1] = Some(VertexKind::Sink1);
    let raw = RawGame { n, start, kinds: kinds.into_iter().map(Option::unwrap).collect(), children };
    // report structural errors against the line that introduced the offending vertex
    raw.clone().try_into().map_err(|error: ValidationError| {
        let line = match &error {
            ValidationError::StartOutOfRange { .. } => header_line,
            _ => find_vertex_line(text, &error).unwrap_or(header_line),
        };
        GameFileError::Invalid { line, error }
    })
}

fn find_vertex_line(text: &str, error: &ValidationError) -> Option<usize> {
    let vertex = match *error {
        ValidationError::ChildOutOfRange { vertex, .. }
        | ValidationError::EqualChildren { vertex, .. }
        | ValidationError::WrongChildCount { vertex, .. } => vertex,
        _ => return None,
    };
    let mut seen_header = false;
    for (idx, line) in text.lines().enumerate() {
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        if !seen_header {
            seen_header = true;
            continue;
        }
        if toks[0].1.parse::<usize>().ok() == Some(vertex) {
            return Some(idx + 1);
        }
    }
    None
}
