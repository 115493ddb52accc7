//! Row-major sample grids over a parameter rectangle.
//!
//! Rows run over `v`, columns over `u`; index `(i, j)` is column `i`, row `j`
//! and the flat index is `j * nu + i`. Coordinates use the form
//! `(a·(n−1−i) + b·i)/(n−1)` so that symmetric rectangles hit zero exactly
//! when `n` is odd.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frame::{Domain, Rect};

pub fn lerp(a: f64, b: f64, i: usize, n: usize) -> f64 {
    if n <= 1 {
        return a;
    }
    let m = (n - 1) as f64;
    (a * (m - i as f64) + b * i as f64) / m
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub domain: Domain,
    pub nu: usize,
    pub nv: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub i: usize,
    pub j: usize,
    pub u: f64,
    pub v: f64,
    pub excluded: bool,
}

impl Grid {
    pub fn new(domain: Domain, nu: usize, nv: usize) -> Result<Self> {
        if nu == 0 || nv == 0 {
            return Err(Error::InvalidGrid(format!("grid must be nonempty, got {nu}x{nv}")));
        }
        let r = domain.rect;
        if !(r.u_min <= r.u_max && r.v_min <= r.v_max) || ![r.u_min, r.u_max, r.v_min, r.v_max].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidGrid(format!("bad rectangle {r:?}")));
        }
        Ok(Self { domain, nu, nv })
    }

    pub fn over(rect: Rect, nu: usize, nv: usize) -> Result<Self> {
        Self::new(
            Domain {
                rect,
                exclusions: Vec::new(),
            },
            nu,
            nv,
        )
    }

    pub fn len(&self) -> usize {
        self.nu * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn u(&self, i: usize) -> f64 {
        lerp(self.domain.rect.u_min, self.domain.rect.u_max, i, self.nu)
    }

    pub fn v(&self, j: usize) -> f64 {
        lerp(self.domain.rect.v_min, self.domain.rect.v_max, j, self.nv)
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nu + i
    }

    pub fn point(&self, i: usize, j: usize) -> GridPoint {
        let (u, v) = (self.u(i), self.v(j));
        GridPoint {
            i,
            j,
            u,
            v,
            excluded: self.domain.is_excluded(u, v),
        }
    }

    /// All points in row-major order.
    pub fn points(&self) -> Vec<GridPoint> {
        (0..self.nv)
            .flat_map(|j| (0..self.nu).map(move |i| (i, j)))
            .map(|(i, j)| self.point(i, j))
            .collect()
    }

    /// Applies `f` to every point, rows in parallel, results in row-major order.
    pub fn map<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&GridPoint) -> T + Sync,
    {
        (0..self.nv)
            .into_par_iter()
            .flat_map_iter(|j| {
                let f = &f;
                (0..self.nu).map(move |i| f(&self.point(i, j)))
            })
            .collect()
    }

    /// Flat indices of the closed 3x3 neighbourhood of `(i, j)`, clipped to
    /// the grid.
    pub fn neighbourhood(&self, i: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        let i0 = i.saturating_sub(1);
        let j0 = j.saturating_sub(1);
        let i1 = (i + 1).min(self.nu - 1);
        let j1 = (j + 1).min(self.nv - 1);
        (j0..=j1).flat_map(move |jj| (i0..=i1).map(move |ii| self.index(ii, jj)))
    }

    /// Whether the full (unclipped) 3x3 neighbourhood exists.
    pub fn is_interior(&self, i: usize, j: usize) -> bool {
        i > 0 && j > 0 && i + 1 < self.nu && j + 1 < self.nv
    }
}
