//! Staircase pictures of lattice ideals `I_d ⊆ ℕ²`: the line `a/d₁ + b/d₂ = 1`, the
//! lattice points on either side of it and the staircase through the minimal generators.

use std::fmt::Write;

use dream_core::{Error, ExponentVector, LatticeIdeal, MultiOrder, Rational};
use num_traits::{One, ToPrimitive};

pub struct Staircase {
    width: MultiOrder,
    overlay: Option<MultiOrder>,
    generators: Vec<ExponentVector>,
    extent: (u32, u32),
}

fn ceil(q: &Rational) -> u32 {
    q.ceil().to_integer().to_u32().unwrap_or(u32::MAX)
}

fn value(d: &MultiOrder, a: u32, b: u32) -> Rational {
    let e = d.entries();
    Rational::from_integer(a.into()) / &e[0] + Rational::from_integer(b.into()) / &e[1]
}

impl Staircase {
    pub fn new(width: MultiOrder, overlay: Option<MultiOrder>) -> Result<Self, Error> {
        for d in std::iter::once(&width).chain(overlay.as_ref()) {
            if d.len() != 2 {
                return Err(Error::ArityMismatch { expected: 2, found: d.len() });
            }
        }
        let mut generators = LatticeIdeal::new(&width)?.minimal_generators().to_vec();
        generators.sort_by_key(|g| g.get(0));
        let mut extent = (ceil(&width.entries()[0]) + 1, ceil(&width.entries()[1]) + 1);
        if let Some(o) = &overlay {
            extent.0 = extent.0.max(ceil(&o.entries()[0]) + 1);
            extent.1 = extent.1.max(ceil(&o.entries()[1]) + 1);
        }
        Ok(Staircase { width, overlay, generators, extent })
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// One character per lattice point: `#` minimal generator, `*` inside `I_d`, `.` outside;
    /// with an overlay, `+` marks points gained by the overlay and `!` points it loses.
    pub fn ascii(&self) -> String {
        let one = Rational::one();
        let mut out = String::new();
        for b in (0..=self.extent.1).rev() {
            let _ = write!(out, "{b:>3} ");
            for a in 0..=self.extent.0 {
                let inside = value(&self.width, a, b) >= one;
                let gained = self.overlay.as_ref().map(|o| value(o, a, b) >= one);
                let c = if self.generators.iter().any(|g| g.get(0) == a && g.get(1) == b) {
                    '#'
                } else if inside && gained == Some(false) {
                    '!'
                } else if inside {
                    '*'
                } else if gained == Some(true) {
                    '+'
                } else {
                    '.'
                };
                out.push(c);
                out.push(' ');
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
        }
        out.push_str("    ");
        for a in 0..=self.extent.0 {
            let _ = write!(out, "{} ", a % 10);
        }
        out.truncate(out.trim_end().len());
        let _ = write!(out, "\nI_d for d = {}", self.width);
        if let Some(o) = &self.overlay {
            let _ = write!(out, ", overlay {o}");
        }
        out.push('\n');
        out
    }

    pub fn svg(&self) -> String {
        const S: f64 = 40.0;
        const M: f64 = 40.0;
        let (w, h) = (self.extent.0 as f64, self.extent.1 as f64);
        let px = |a: f64| M + a * S;
        let py = |b: f64| M + (h - b) * S;
        let f = |q: &Rational| q.to_f64().unwrap_or(f64::NAN);
        let one = Rational::one();
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
            2.0 * M + w * S,
            2.0 * M + h * S,
            2.0 * M + w * S,
            2.0 * M + h * S
        );
        let _ = writeln!(s, r#"<title>I_d for d = {}</title>"#, self.width);
        let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
        let _ = writeln!(
            s,
            r##"<path d="M {} {} L {} {} L {} {}" stroke="#888888" fill="none"/>"##,
            px(0.0),
            py(h),
            px(0.0),
            py(0.0),
            px(w),
            py(0.0)
        );
        // Staircase through the minimal generators.
        let mut path = String::new();
        for (k, g) in self.generators.iter().enumerate() {
            let (a, b) = (g.get(0) as f64, g.get(1) as f64);
            if k == 0 {
                let _ = write!(path, "M {} {} ", px(a), py(h));
            }
            let _ = write!(path, "L {} {} ", px(a), py(b));
            let next = self.generators.get(k + 1).map_or(w, |n| n.get(0) as f64);
            let _ = write!(path, "L {} {} ", px(next), py(b));
        }
        let _ = writeln!(s, r##"<path d="{}" stroke="#3366cc" stroke-width="2" fill="none"/>"##, path.trim_end());
        let line = |d: &MultiOrder, style: &str| {
            let e = d.entries();
            format!(
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#,
                px(f(&e[0])),
                py(0.0),
                px(0.0),
                py(f(&e[1]))
            )
        };
        let _ = writeln!(s, "{}", line(&self.width, r##"stroke="#000000" stroke-width="2""##));
        if let Some(o) = &self.overlay {
            let _ = writeln!(s, "{}", line(o, r##"stroke="#cc3333" stroke-width="2" stroke-dasharray="6 4""##));
        }
        for b in 0..=self.extent.1 {
            for a in 0..=self.extent.0 {
                let v = value(&self.width, a, b);
                let fill = if v > one {
                    "#cc6600"
                } else if v == one {
                    "#000000"
                } else {
                    "#ffffff"
                };
                let _ = writeln!(
                    s,
                    r##"<circle cx="{}" cy="{}" r="4" fill="{fill}" stroke="#000000"/>"##,
                    px(a as f64),
                    py(b as f64)
                );
            }
        }
        s.push_str("</svg>\n");
        s
    }
}
