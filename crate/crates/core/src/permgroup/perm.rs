use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, …, degree-1}` stored as its image sequence.
///
/// Products follow function composition: `p.compose(q)` applies `q` first,
/// then `p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its images, checking bijectivity.
    pub fn from_images<I>(images: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: TryInto<u32>,
    {
        let images: Vec<u32> = images
            .into_iter()
            .map(|x| x.try_into().map_err(|_| Error::Invalid("point out of range".into())))
            .collect::<Result<_>>()?;
        if images.is_empty() {
            return Err(Error::Invalid("permutation of degree 0".into()));
        }
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(Error::Invalid(format!(
                    "images do not form a permutation of 0..{}",
                    images.len()
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 0-indexed disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::Invalid(format!("point {a} outside degree {degree}")));
                }
                if touched[a] {
                    return Err(Error::Invalid(format!("point {a} appears twice")));
                }
                touched[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Permutation::from_images(images)
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Permutation {
            images: other.images.iter().map(|&j| self.images[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g ∘ self ∘ g⁻¹`
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[j as usize];
        }
        Permutation { images: out }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &j)| i as u32 == j).count()
    }

    /// Number of moved points.
    pub fn support_size(&self) -> usize {
        self.degree() - self.fixed_point_count()
    }

    /// Cycle lengths in order of their smallest point, fixed points included.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Number of cycles, counting fixed points.
    pub fn cycle_count(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
            }
        }
        count
    }

    /// Nontrivial cycles, each starting at its smallest point (0-indexed).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Parses 1-indexed cycle notation such as `(1 2 3)(4 5)`.
    ///
    /// Without an explicit degree the largest mentioned point is used.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let cycles = parse_cycles(text, 1, 1)?;
        from_parsed(&cycles, degree)
    }
}

impl fmt::Display for Permutation {
    /// 1-indexed cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.degree())
    }
}

/// Largest degree (and largest point) accepted from text.
pub const MAX_PARSED_DEGREE: usize = 1 << 20;

/// A parsed cycle: 1-indexed points with the (line, column) of each point.
type ParsedCycle = Vec<(usize, (usize, usize))>;

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Tokenizes one generator. `line`/`column` give the position of `text[0]`.
fn parse_cycles(text: &str, line0: usize, col0: usize) -> Result<Vec<ParsedCycle>> {
    let mut cycles = Vec::new();
    let mut current: Option<ParsedCycle> = None;
    let (mut line, mut col) = (line0, col0);
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        let here = (line, col);
        match c {
            '(' => {
                if current.is_some() {
                    return Err(parse_error(line, col, "nested '('"));
                }
                current = Some(Vec::new());
            }
            ')' => match current.take() {
                Some(cycle) => cycles.push(cycle),
                None => return Err(parse_error(line, col, "unmatched ')'")),
            },
            c if c.is_ascii_digit() => {
                let Some(cycle) = current.as_mut() else {
                    return Err(parse_error(line, col, "point outside of a cycle"));
                };
                let mut value: usize = c.to_digit(10).unwrap() as usize;
                while let Some(d) = chars.peek().and_then(|d| d.to_digit(10)) {
                    chars.next();
                    col += 1;
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as usize))
                        .filter(|&v| v <= MAX_PARSED_DEGREE)
                        .ok_or_else(|| parse_error(here.0, here.1, "point too large"))?;
                }
                if value == 0 {
                    return Err(parse_error(here.0, here.1, "points are 1-indexed"));
                }
                if value > MAX_PARSED_DEGREE {
                    return Err(parse_error(here.0, here.1, "point too large"));
                }
                cycle.push((value, here));
            }
            '\n' => {
                if current.is_some() {
                    return Err(parse_error(line, col, "cycle spans a line break"));
                }
                line += 1;
                col = 0;
            }
            c if c.is_whitespace() || c == ',' => {}
            other => return Err(parse_error(line, col, format!("unexpected character {other:?}"))),
        }
        col += 1;
    }
    if current.is_some() {
        return Err(parse_error(line, col, "unterminated cycle"));
    }
    Ok(cycles)
}

fn max_point(cycles: &[ParsedCycle]) -> usize {
    cycles.iter().flatten().map(|&(p, _)| p).max().unwrap_or(1)
}

fn from_parsed(cycles: &[ParsedCycle], degree: Option<usize>) -> Result<Permutation> {
    let degree = degree.unwrap_or_else(|| max_point(cycles));
    if degree == 0 || degree > MAX_PARSED_DEGREE {
        return Err(Error::Invalid(format!("degree must be in 1..={MAX_PARSED_DEGREE}, got {degree}")));
    }
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut touched = vec![false; degree];
    for cycle in cycles {
        for (i, &(p, (line, col))) in cycle.iter().enumerate() {
            if p > degree {
                return Err(parse_error(line, col, format!("point {p} exceeds degree {degree}")));
            }
            if touched[p - 1] {
                return Err(parse_error(line, col, format!("point {p} repeated; cycles must be disjoint")));
            }
            touched[p - 1] = true;
            let next = cycle[(i + 1) % cycle.len()].0;
            images[p - 1] = (next - 1) as u32;
        }
    }
    Ok(Permutation { images })
}

/// Parses a generator list: permutations in cycle notation separated by `;`
/// or line breaks. All generators share one degree (given, or the largest point).
pub fn parse_generators(text: &str, degree: Option<usize>) -> Result<Vec<Permutation>> {
    let mut parsed = Vec::new();
    for (lineno, line) in text.split('\n').enumerate() {
        let mut col = 1;
        for piece in line.split(';') {
            if !piece.trim().is_empty() {
                parsed.push(parse_cycles(piece, lineno + 1, col)?);
            }
            col += piece.chars().count() + 1;
        }
    }
    if parsed.is_empty() {
        return Err(parse_error(1, 1, "no generators given"));
    }
    let degree = degree.unwrap_or_else(|| parsed.iter().map(|c| max_point(c)).max().unwrap_or(1));
    parsed.iter().map(|c| from_parsed(c, Some(degree))).collect()
}
