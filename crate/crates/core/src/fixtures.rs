//! Named sphere families used by the examples, the tests and the command
//! line tool.

use std::f64::consts::PI;

use crate::dsl::{parse, parse_vec, Bindings};
use crate::error::{Error, Result};
use crate::frame::{Domain, Exclusion, FramedSurfaceSpec, SphereFamily};
use crate::grid::Grid;

pub struct FixtureDef {
    pub name: &'static str,
    pub about: &'static str,
    pub x: &'static str,
    pub n: &'static str,
    pub s: &'static str,
    pub lambda: &'static str,
    pub rect: [f64; 4],
    pub exclude: &'static [&'static str],
    pub grid: (usize, usize),
}

pub const FIXTURES: [FixtureDef; 10] = [
    FixtureDef {
        name: "parabolic-cylinder",
        about: "unit spheres along the cuspidal edge (u^2, u^3, v); two envelopes",
        x: "(u^2, u^3, v)",
        n: "(-3*u/sqrt(9*u^2+4), 2/sqrt(9*u^2+4), 0)",
        s: "(0, 0, 1)",
        lambda: "1",
        rect: [-1.0, 1.0, -1.0, 1.0],
        exclude: &[],
        grid: (101, 101),
    },
    FixtureDef {
        name: "cone-distance",
        about: "spheres centred on the plane through the origin; unique envelope (0, 0, 0)",
        x: "(u, v, 0)",
        n: "(0, 0, 1)",
        s: "(1, 0, 0)",
        lambda: "sqrt(u^2+v^2)",
        rect: [-1.0, 1.0, -1.0, 1.0],
        exclude: &["u^2 + v^2 < 1e-12"],
        grid: (41, 41),
    },
    FixtureDef {
        name: "translated-planes",
        about: "unit spheres centred on the plane z = 0; envelopes z = 1 and z = -1",
        x: "(u, v, 0)",
        n: "(0, 0, 1)",
        s: "(1, 0, 0)",
        lambda: "1",
        rect: [-1.0, 1.0, -1.0, 1.0],
        exclude: &[],
        grid: (41, 41),
    },
    FixtureDef {
        name: "fixed-sphere",
        about: "one unit sphere for every parameter; every map into it is an envelope",
        x: "(0, 0, 0)",
        n: "(0, 0, 1)",
        s: "(1, 0, 0)",
        lambda: "1",
        rect: [-1.0, 1.0, -1.0, 1.0],
        exclude: &[],
        grid: (21, 21),
    },
    FixtureDef {
        name: "axis-full",
        about: "spheres of radius v centred at (0, 0, v); unique envelope (0, 0, 0)",
        x: "(0, 0, v)",
        n: "(1, 0, 0)",
        s: "(0, 1, 0)",
        lambda: "v",
        rect: [-1.0, 1.0, 0.5, 2.5],
        exclude: &["v <= 0"],
        grid: (21, 21),
    },
    FixtureDef {
        name: "axis-half",
        about: "spheres of radius v/2 centred at (0, 0, v); a circle of envelopes",
        x: "(0, 0, v)",
        n: "(1, 0, 0)",
        s: "(0, 1, 0)",
        lambda: "v/2",
        rect: [-1.0, 1.0, 0.5, 2.5],
        exclude: &["v <= 0"],
        grid: (21, 21),
    },
    FixtureDef {
        name: "sphere-through-origin",
        about: "spheres centred on the unit sphere about (0, 0, 1), all passing through the origin",
        x: "(cos(u)*cos(v), cos(u)*sin(v), 1 + sin(u))",
        n: "(cos(u)*cos(v), cos(u)*sin(v), sin(u))",
        s: "(-sin(u)*cos(v), -sin(u)*sin(v), cos(u))",
        lambda: "sqrt(2 + 2*sin(u))",
        rect: [-1.2, 1.2, 0.0, 2.0 * PI],
        exclude: &[],
        grid: (41, 41),
    },
    FixtureDef {
        name: "concentric",
        about: "concentric spheres with growing radius; not creative",
        x: "(0, 0, 0)",
        n: "(0, 0, 1)",
        s: "(1, 0, 0)",
        lambda: "sqrt(u^2+v^2)",
        rect: [-1.0, 1.0, -1.0, 1.0],
        exclude: &["u^2 + v^2 < 1e-12"],
        grid: (21, 21),
    },
    FixtureDef {
        name: "unit-sphere",
        about: "the unit sphere with outward normal and radius 1/2; focal set at the centre",
        x: "(cos(u)*cos(v), cos(u)*sin(v), sin(u))",
        n: "(cos(u)*cos(v), cos(u)*sin(v), sin(u))",
        s: "(-sin(u)*cos(v), -sin(u)*sin(v), cos(u))",
        lambda: "0.5",
        rect: [-1.2, 1.2, 0.0, 2.0 * PI],
        exclude: &[],
        grid: (25, 25),
    },
    FixtureDef {
        name: "involute-circle",
        about: "spheres of radius 2 + u on the unit cylinder; unique envelope x - (2 + u) s",
        x: "(cos(u), sin(u), v)",
        n: "(cos(u), sin(u), 0)",
        s: "(-sin(u), cos(u), 0)",
        lambda: "2 + u",
        rect: [0.0, 2.0, -1.0, 1.0],
        exclude: &[],
        grid: (21, 21),
    },
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|f| f.name)
}

pub fn definition(name: &str) -> Result<&'static FixtureDef> {
    FIXTURES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

impl FixtureDef {
    pub fn domain(&self) -> Result<Domain> {
        let [a, b, c, d] = self.rect;
        let mut domain = Domain::rect(a, b, c, d);
        for e in self.exclude {
            domain = domain.excluding(Exclusion::parse(e, &Bindings::new())?);
        }
        Ok(domain)
    }

    pub fn family(&self) -> Result<SphereFamily> {
        let surface = FramedSurfaceSpec::new(
            parse_vec(self.x)?,
            Some(parse_vec(self.n)?),
            Some(parse_vec(self.s)?),
            self.domain()?,
        );
        Ok(SphereFamily::new(surface, parse(self.lambda)?))
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.domain()?, self.grid.0, self.grid.1)
    }
}

pub fn family(name: &str) -> Result<SphereFamily> {
    definition(name)?.family()
}

pub fn grid(name: &str) -> Result<Grid> {
    definition(name)?.grid()
}
