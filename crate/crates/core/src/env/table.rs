//! Loader for grid-table reward models.
//!
//! The format is a small, whitespace-tokenized text file:
//!
//! ```text
//! # optional comment lines
//! dims 1 1
//! grid 3 3
//! lipschitz 1.0 1.0
//! values
//! 0.1 0.5 0.9
//! 0.2 0.6 0.8
//! 0.3 0.7 0.7
//! ```
//!
//! `dims` gives the context and arm dimensions, `grid` the node count per
//! axis (context axes first), `lipschitz` the declared constants, and
//! `values` the node means in row-major order (last axis fastest). Nodes
//! sit at `i / (g - 1)` on each axis (a single-node axis is constant);
//! queries are multilinear interpolation between nodes.
//!
//! The loader rejects values outside `[0,1]` and audits the declared
//! Lipschitz constants by exhaustive adjacent-node differencing: the
//! per-axis worst slopes, summed over the context (resp. arm) axes, must
//! not exceed the declared constant. That sum bounds the interpolant's
//! true L-infinity Lipschitz constant.

use std::fs;
use std::path::Path;

use super::EnvError;

#[derive(Debug, Clone, PartialEq)]
pub struct GridTable {
    d_x: usize,
    d_a: usize,
    grid: Vec<usize>,
    lipschitz_x: f64,
    lipschitz_a: f64,
    values: Vec<f64>,
}

impl GridTable {
    pub fn load(path: &Path) -> Result<Self, EnvError> {
        let text = fs::read_to_string(path).map_err(|e| EnvError::TableParse {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, EnvError> {
        let mut d_x = None;
        let mut grid: Option<Vec<usize>> = None;
        let mut lipschitz = None;
        let mut values: Vec<f64> = Vec::new();
        let mut in_values = false;

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            if in_values {
                for tok in content.split_whitespace() {
                    values.push(parse_f64(tok, line)?);
                }
                continue;
            }
            match tokens.next() {
                Some("dims") => {
                    let dx = parse_usize(tokens.next(), line, "dims needs d_x d_a")?;
                    let da = parse_usize(tokens.next(), line, "dims needs d_x d_a")?;
                    if dx == 0 || da == 0 {
                        return Err(EnvError::TableParse {
                            line,
                            message: "dimensions must be at least 1".into(),
                        });
                    }
                    d_x = Some((dx, da));
                }
                Some("grid") => {
                    let sizes = tokens
                        .map(|t| parse_usize(Some(t), line, "grid sizes must be integers"))
                        .collect::<Result<Vec<_>, _>>()?;
                    if sizes.iter().any(|&g| g == 0) {
                        return Err(EnvError::TableParse {
                            line,
                            message: "grid sizes must be at least 1".into(),
                        });
                    }
                    grid = Some(sizes);
                }
                Some("lipschitz") => {
                    let lx = parse_f64(
                        tokens.next().ok_or(EnvError::TableParse {
                            line,
                            message: "lipschitz needs L_X L_A".into(),
                        })?,
                        line,
                    )?;
                    let la = parse_f64(
                        tokens.next().ok_or(EnvError::TableParse {
                            line,
                            message: "lipschitz needs L_X L_A".into(),
                        })?,
                        line,
                    )?;
                    lipschitz = Some((lx, la));
                }
                Some("values") => in_values = true,
                Some(other) => {
                    return Err(EnvError::TableParse {
                        line,
                        message: format!("unknown directive '{other}'"),
                    })
                }
                None => {}
            }
        }

        let (d_x, d_a) = d_x.ok_or(EnvError::TableParse {
            line: 0,
            message: "missing 'dims' header".into(),
        })?;
        let grid = grid.ok_or(EnvError::TableParse {
            line: 0,
            message: "missing 'grid' header".into(),
        })?;
        let (lipschitz_x, lipschitz_a) = lipschitz.ok_or(EnvError::TableParse {
            line: 0,
            message: "missing 'lipschitz' header".into(),
        })?;
        if grid.len() != d_x + d_a {
            return Err(EnvError::TableParse {
                line: 0,
                message: format!(
                    "grid lists {} sizes but dims imply {}",
                    grid.len(),
                    d_x + d_a
                ),
            });
        }
        let expected: usize = grid.iter().product();
        if values.len() != expected {
            return Err(EnvError::TableParse {
                line: 0,
                message: format!("expected {expected} values, found {}", values.len()),
            });
        }
        for &v in &values {
            if !(0.0..=1.0).contains(&v) {
                return Err(EnvError::TableValueOutOfRange { value: v });
            }
        }
        if !(lipschitz_x > 0.0) || !(lipschitz_a > 0.0) {
            return Err(EnvError::TableParse {
                line: 0,
                message: "declared Lipschitz constants must be positive".into(),
            });
        }

        let table = Self {
            d_x,
            d_a,
            grid,
            lipschitz_x,
            lipschitz_a,
            values,
        };
        table.audit_lipschitz()?;
        Ok(table)
    }

    pub fn d_x(&self) -> usize {
        self.d_x
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn lipschitz_x(&self) -> f64 {
        self.lipschitz_x
    }

    pub fn lipschitz_a(&self) -> f64 {
        self.lipschitz_a
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.grid.len()];
        for i in (0..self.grid.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.grid[i + 1];
        }
        strides
    }

    fn audit_lipschitz(&self) -> Result<(), EnvError> {
        let strides = self.strides();
        let mut worst_slope = vec![0.0f64; self.grid.len()];
        for (axis, (&g, &stride)) in self.grid.iter().zip(&strides).enumerate() {
            if g < 2 {
                continue;
            }
            let spacing = 1.0 / (g - 1) as f64;
            for (flat, &v) in self.values.iter().enumerate() {
                let coord = flat / stride % g;
                if coord + 1 < g {
                    let diff = (self.values[flat + stride] - v).abs();
                    worst_slope[axis] = worst_slope[axis].max(diff / spacing);
                }
            }
        }
        let context_sum: f64 = worst_slope[..self.d_x].iter().sum();
        let arm_sum: f64 = worst_slope[self.d_x..].iter().sum();
        if context_sum > self.lipschitz_x + 1e-9 {
            return Err(EnvError::TableLipschitzAudit {
                axis: "context",
                observed: context_sum,
                declared: self.lipschitz_x,
            });
        }
        if arm_sum > self.lipschitz_a + 1e-9 {
            return Err(EnvError::TableLipschitzAudit {
                axis: "arm",
                observed: arm_sum,
                declared: self.lipschitz_a,
            });
        }
        Ok(())
    }

    /// Multilinear interpolation at `(x, k)`; coordinates are clamped to
    /// `[0,1]` per axis. Stays in `[0,1]` because node values do.
    pub fn interpolate(&self, x: &[f64], k: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.d_x);
        debug_assert_eq!(k.len(), self.d_a);
        let coords: Vec<f64> = x.iter().chain(k.iter()).copied().collect();
        let strides = self.strides();

        // Per axis: lower node and interpolation weight.
        let mut base = vec![0usize; coords.len()];
        let mut frac = vec![0.0f64; coords.len()];
        for (axis, &c) in coords.iter().enumerate() {
            let g = self.grid[axis];
            if g == 1 {
                continue;
            }
            let scaled = c.clamp(0.0, 1.0) * (g - 1) as f64;
            let i0 = (scaled as usize).min(g - 2);
            base[axis] = i0;
            frac[axis] = scaled - i0 as f64;
        }

        let mut total = 0.0;
        let corners = 1usize << coords.len();
        for corner in 0..corners {
            let mut weight = 1.0;
            let mut flat = 0usize;
            for axis in 0..coords.len() {
                let high = corner >> axis & 1 == 1;
                if self.grid[axis] == 1 {
                    if high {
                        weight = 0.0;
                        break;
                    }
                    continue;
                }
                weight *= if high { frac[axis] } else { 1.0 - frac[axis] };
                flat += (base[axis] + usize::from(high)) * strides[axis];
            }
            if weight != 0.0 {
                total += weight * self.values[flat];
            }
        }
        total
    }
}

fn parse_usize(tok: Option<&str>, line: usize, message: &str) -> Result<usize, EnvError> {
    tok.and_then(|t| t.parse().ok()).ok_or(EnvError::TableParse {
        line,
        message: message.into(),
    })
}

fn parse_f64(tok: &str, line: usize) -> Result<f64, EnvError> {
    tok.parse().map_err(|_| EnvError::TableParse {
        line,
        message: format!("cannot parse '{tok}' as a number"),
    })
}
