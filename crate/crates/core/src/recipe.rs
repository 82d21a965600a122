//! A small notation for block matrices and integer rank combinations.
//!
//! `[A B; C 0]` is a 2x2 block grid; cells are `0`, `Name`, `Name*`
//! (conjugate transpose), `-Name` or `-Name*`. A rank expression such as
//! `[A B]+2[C; D]` sums integer multiples of block ranks, and a condition is
//! two rank expressions joined by `=`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Block, Matrix};

/// Named matrices a recipe draws from.
pub type Bindings = BTreeMap<String, Matrix>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub name: String,
    pub negated: bool,
    pub starred: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Recipe {
    grid: Vec<Vec<Option<Cell>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankExpr {
    terms: Vec<(i64, Recipe)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub lhs: RankExpr,
    pub rhs: RankExpr,
}

/// One evaluated condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionRecord {
    pub label: String,
    pub lhs_matrix_recipe: String,
    pub lhs_rank: i64,
    pub rhs_rank_expression: String,
    pub rhs_rank: i64,
    pub holds: bool,
}

impl Recipe {
    pub fn parse(text: &str) -> Result<Recipe> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("recipe must be bracketed: `{text}`")))?;
        let grid = inner
            .split(';')
            .map(|row| row.split_whitespace().map(parse_cell).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if grid.iter().any(Vec::is_empty) {
            return Err(Error::Parse(format!("empty block row in `{text}`")));
        }
        Ok(Recipe { grid })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.grid.iter().flatten().flatten().map(|c| c.name.as_str())
    }

    pub fn assemble(&self, bindings: &Bindings) -> Result<Matrix> {
        let mut owned: Vec<Vec<Option<Matrix>>> = Vec::with_capacity(self.grid.len());
        for row in &self.grid {
            let mut out = Vec::with_capacity(row.len());
            for cell in row {
                out.push(match cell {
                    None => None,
                    Some(c) => {
                        let m = bindings
                            .get(&c.name)
                            .ok_or_else(|| Error::MissingMatrix(c.name.clone()))?;
                        let m = if c.starred { m.conjugate_transpose() } else { m.clone() };
                        Some(if c.negated { m.neg() } else { m })
                    }
                });
            }
            owned.push(out);
        }
        let grid: Vec<Vec<Block>> = owned
            .iter()
            .map(|row| row.iter().map(|m| m.as_ref().map_or(Block::Zero, Block::Of)).collect())
            .collect();
        Matrix::block(&grid).map_err(|e| match e {
            Error::ShapeMismatch(msg) => Error::ShapeMismatch(format!("{self}: {msg}")),
            other => other,
        })
    }

    pub fn rank(&self, bindings: &Bindings) -> Result<usize> {
        Ok(self.assemble(bindings)?.rank())
    }
}

fn parse_cell(token: &str) -> Result<Option<Cell>> {
    if token == "0" {
        return Ok(None);
    }
    let (negated, rest) = match token.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, token),
    };
    let (starred, name) = match rest.strip_suffix('*') {
        Some(n) => (true, n),
        None => (false, rest),
    };
    let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid {
        return Err(Error::Parse(format!("bad recipe cell `{token}`")));
    }
    Ok(Some(Cell {
        name: name.to_string(),
        negated,
        starred,
    }))
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .grid
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| match c {
                        None => "0".to_string(),
                        Some(c) => format!(
                            "{}{}{}",
                            if c.negated { "-" } else { "" },
                            c.name,
                            if c.starred { "*" } else { "" }
                        ),
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl RankExpr {
    pub fn parse(text: &str) -> Result<RankExpr> {
        let mut terms = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .find('[')
                .ok_or_else(|| Error::Parse(format!("expected `[` in `{text}`")))?;
            let close = rest[open..]
                .find(']')
                .map(|i| open + i)
                .ok_or_else(|| Error::Parse(format!("unclosed `[` in `{text}`")))?;
            let coeff_text = rest[..open].trim();
            let coeff = if coeff_text.is_empty() {
                1
            } else {
                coeff_text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{coeff_text}`")))?
            };
            terms.push((coeff, Recipe::parse(&rest[open..=close])?));
            rest = rest[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix('+') {
                rest = r.trim_start();
                if rest.is_empty() {
                    return Err(Error::Parse(format!("dangling `+` in `{text}`")));
                }
            } else if !rest.is_empty() {
                return Err(Error::Parse(format!("expected `+` in `{text}`")));
            }
        }
        if terms.is_empty() {
            return Err(Error::Parse("empty rank expression".into()));
        }
        Ok(RankExpr { terms })
    }

    pub fn recipes(&self) -> impl Iterator<Item = &Recipe> {
        self.terms.iter().map(|(_, r)| r)
    }

    pub fn evaluate(&self, ranks: &RankTable) -> i64 {
        self.terms.iter().map(|(c, r)| c * ranks.get(r) as i64).sum()
    }
}

impl fmt::Display for RankExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, r)| if *c == 1 { r.to_string() } else { format!("{c}{r}") })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl Condition {
    pub fn parse(text: &str) -> Result<Condition> {
        let (l, r) = text
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("condition needs `=`: `{text}`")))?;
        Ok(Condition {
            lhs: RankExpr::parse(l)?,
            rhs: RankExpr::parse(r)?,
        })
    }

    pub fn recipes(&self) -> impl Iterator<Item = &Recipe> {
        self.lhs.recipes().chain(self.rhs.recipes())
    }

    pub fn evaluate(&self, label: &str, ranks: &RankTable) -> ConditionRecord {
        let lhs_rank = self.lhs.evaluate(ranks);
        let rhs_rank = self.rhs.evaluate(ranks);
        ConditionRecord {
            label: label.to_string(),
            lhs_matrix_recipe: self.lhs.to_string(),
            lhs_rank,
            rhs_rank_expression: self.rhs.to_string(),
            rhs_rank,
            holds: lhs_rank == rhs_rank,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.lhs, self.rhs)
    }
}

/// Ranks of a set of recipes, each distinct grid evaluated once.
#[derive(Clone, Debug, Default)]
pub struct RankTable {
    ranks: HashMap<Recipe, usize>,
}

impl RankTable {
    /// Assembles and ranks every distinct recipe, in parallel.
    pub fn compute<'r>(bindings: &Bindings, recipes: impl IntoIterator<Item = &'r Recipe>) -> Result<RankTable> {
        let mut unique: Vec<&Recipe> = Vec::new();
        for r in recipes {
            if !unique.contains(&r) {
                unique.push(r);
            }
        }
        let values = unique
            .par_iter()
            .map(|r| r.rank(bindings))
            .collect::<Result<Vec<_>>>()?;
        Ok(RankTable {
            ranks: unique.into_iter().cloned().zip(values).collect(),
        })
    }

    pub fn get(&self, recipe: &Recipe) -> usize {
        *self
            .ranks
            .get(recipe)
            .unwrap_or_else(|| panic!("recipe {recipe} missing from rank table"))
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

/// Parses a recipe that is known to be well formed.
pub(crate) fn recipe(text: &str) -> Recipe {
    Recipe::parse(text).unwrap_or_else(|e| panic!("built-in recipe `{text}`: {e}"))
}
