//! OBJ and CSV output.
//!
//! Numbers are written as `{:.16e}` (17 significant digits) with negative
//! zero printed as zero, so equal inputs give byte-identical files.

use std::io::Write;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::vector::Vec3;

pub fn num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// One `o` block: vertices and quad faces with 0-based local indices.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MeshObject {
    pub tag: String,
    pub vertices: Vec<Vec3>,
    pub faces: Vec<[usize; 4]>,
}

impl MeshObject {
    pub fn new(tag: impl Into<String>) -> Self {
        Self {
            tag: tag.into(),
            ..Self::default()
        }
    }

    /// Vertices for the present samples in row-major order and a quad for
    /// every grid cell whose four corners are present.
    pub fn from_grid(tag: impl Into<String>, grid: &Grid, samples: &[Option<Vec3>]) -> Self {
        let mut obj = Self::new(tag);
        let mut index = vec![usize::MAX; samples.len()];
        for (k, s) in samples.iter().enumerate() {
            if let Some(p) = s {
                index[k] = obj.vertices.len();
                obj.vertices.push(*p);
            }
        }
        for j in 0..grid.nv.saturating_sub(1) {
            for i in 0..grid.nu.saturating_sub(1) {
                let corners = [
                    index[grid.index(i, j)],
                    index[grid.index(i + 1, j)],
                    index[grid.index(i + 1, j + 1)],
                    index[grid.index(i, j + 1)],
                ];
                if corners.iter().all(|&c| c != usize::MAX) {
                    obj.faces.push(corners);
                }
            }
        }
        obj
    }

    pub fn push_ring(&mut self, ring: &[Vec3]) -> usize {
        let start = self.vertices.len();
        self.vertices.extend_from_slice(ring);
        start
    }

    /// Quads joining two rings of equal length that start at `a` and `b`.
    pub fn join_rings(&mut self, a: usize, b: usize, m: usize) {
        for k in 0..m {
            let k1 = (k + 1) % m;
            self.faces.push([a + k, a + k1, b + k1, b + k]);
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Mesh {
    pub objects: Vec<MeshObject>,
}

impl Mesh {
    pub fn push(&mut self, obj: MeshObject) {
        self.objects.push(obj);
    }

    pub fn vertex_count(&self) -> usize {
        self.objects.iter().map(|o| o.vertices.len()).sum()
    }

    pub fn face_count(&self) -> usize {
        self.objects.iter().map(|o| o.faces.len()).sum()
    }

    pub fn write_obj<W: Write>(&self, mut w: W) -> Result<()> {
        let mut offset = 1;
        for obj in &self.objects {
            writeln!(w, "o {}", obj.tag)?;
            for v in &obj.vertices {
                writeln!(w, "v {} {} {}", num(v.x), num(v.y), num(v.z))?;
            }
            for f in &obj.faces {
                writeln!(w, "f {} {} {} {}", f[0] + offset, f[1] + offset, f[2] + offset, f[3] + offset)?;
            }
            offset += obj.vertices.len();
        }
        Ok(())
    }

    pub fn to_obj_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_obj(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }
}

/// A CSV table held in memory until written.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        let io = |e: csv::Error| Error::Io(e.to_string());
        out.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            out.write_record(r).map_err(io)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("utf-8 output")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Rect;

    #[test]
    fn number_format() {
        assert_eq!(num(-0.0), "0.0000000000000000e0");
        assert_eq!(num(1.5), "1.5000000000000000e0");
        assert_eq!(num(-2e-9), "-2.0000000000000001e-9");
    }

    #[test]
    fn grid_mesh_skips_missing_corners() {
        let g = Grid::over(Rect::new(0.0, 1.0, 0.0, 1.0), 3, 3).unwrap();
        let mut samples: Vec<Option<Vec3>> = g.points().iter().map(|p| Some(Vec3::new(p.u, p.v, 0.0))).collect();
        samples[g.index(2, 2)] = None;
        let obj = MeshObject::from_grid("sheet", &g, &samples);
        assert_eq!(obj.vertices.len(), 8);
        assert_eq!(obj.faces.len(), 3);
        assert!(obj.faces.iter().flatten().all(|&k| k < 8));
        let mut mesh = Mesh::default();
        mesh.push(obj);
        let text = mesh.to_obj_string();
        assert!(text.starts_with("o sheet\nv 0.0000000000000000e0 0.0000000000000000e0 0.0000000000000000e0\n"));
        assert!(text.contains("\nf 1 2 5 4\n"));
    }

    #[test]
    fn csv_uses_lf() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["1".into(), "x".into()]);
        assert_eq!(t.to_csv_string(), "a,b\n1,x\n");
    }
}
