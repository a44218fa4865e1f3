//! The N×N phase-space grid, its lines and striations.
//!
//! A striation is labelled by a direction `d = (d_q, d_p)`; its ray is the
//! point set `{s·d : s ∈ F}` and its lines are the translates of the ray,
//! i.e. the solutions of `d_p·q + d_q·p = c`. Striations are ordered
//! vertical `(0,1)`, horizontal `(1,0)`, then `(1, ω^k)` for `k = 0..N-2`.
//! Points are flattened row-major: `index = q·N + p`.

use crate::field::{Field, FieldElement};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point {
    pub q: FieldElement,
    pub p: FieldElement,
}

impl Point {
    pub const ORIGIN: Point = Point {
        q: FieldElement::ZERO,
        p: FieldElement::ZERO,
    };

    pub const fn new(q: FieldElement, p: FieldElement) -> Self {
        Point { q, p }
    }

    #[inline]
    pub fn index(&self, order: usize) -> usize {
        self.q.index() * order + self.p.index()
    }

    #[inline]
    pub fn from_index(index: usize, order: usize) -> Self {
        Point {
            q: FieldElement::from_raw((index / order) as u32),
            p: FieldElement::from_raw((index % order) as u32),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    /// Coefficients of `a·q + b·p = c`.
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub striation: usize,
    /// Points in ascending index order.
    pub points: Vec<Point>,
}

impl Line {
    /// Position of this line within the striation.
    #[inline]
    pub fn line_id(&self) -> usize {
        self.c.index()
    }

    pub fn contains(&self, point: &Point) -> bool {
        self.points.binary_search(point).is_ok()
    }

    pub fn is_ray(&self) -> bool {
        self.c.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Striation {
    pub id: usize,
    pub direction: Point,
    /// Global indices of the N lines, ordered by `c`.
    pub lines: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PhaseSpace {
    field: Field,
    striations: Vec<Striation>,
    lines: Vec<Line>,
}

impl PhaseSpace {
    pub fn new(field: Field) -> Self {
        let n = field.order();
        let w = field.generator();
        let mut directions = vec![
            Point::new(FieldElement::ZERO, FieldElement::ONE),
            Point::new(FieldElement::ONE, FieldElement::ZERO),
        ];
        directions
            .extend((0..n as u32 - 1).map(|k| Point::new(FieldElement::ONE, field.pow(w, k))));

        let mut striations = Vec::with_capacity(n + 1);
        let mut lines = Vec::with_capacity(n * (n + 1));
        for (id, &direction) in directions.iter().enumerate() {
            let (a, b) = (direction.p, direction.q);
            let mut buckets = vec![Vec::with_capacity(n); n];
            for idx in 0..n * n {
                let pt = Point::from_index(idx, n);
                let c = field.add(field.mul(a, pt.q), field.mul(b, pt.p));
                buckets[c.index()].push(pt);
            }
            let start = lines.len();
            for (c, points) in buckets.into_iter().enumerate() {
                lines.push(Line {
                    a,
                    b,
                    c: FieldElement::from_raw(c as u32),
                    striation: id,
                    points,
                });
            }
            striations.push(Striation {
                id,
                direction,
                lines: (start..start + n).collect(),
            });
        }
        PhaseSpace {
            field,
            striations,
            lines,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Side length `N` of the grid.
    #[inline]
    pub fn order(&self) -> usize {
        self.field.order()
    }

    #[inline]
    pub fn num_points(&self) -> usize {
        self.order() * self.order()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        let n = self.order();
        (0..n * n).map(move |i| Point::from_index(i, n))
    }

    pub fn striations(&self) -> &[Striation] {
        &self.striations
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn line(&self, index: usize) -> &Line {
        &self.lines[index]
    }

    /// Global index of the line with label `c` in striation `striation`.
    #[inline]
    pub fn line_index(&self, striation: usize, c: FieldElement) -> usize {
        striation * self.order() + c.index()
    }

    pub fn ray(&self, striation: usize) -> &Line {
        &self.lines[self.line_index(striation, FieldElement::ZERO)]
    }

    /// Label `c` of the line of `striation` passing through `point`.
    pub fn label_through(&self, striation: usize, point: &Point) -> FieldElement {
        let line = self.ray(striation);
        self.field.add(
            self.field.mul(line.a, point.q),
            self.field.mul(line.b, point.p),
        )
    }

    /// Global indices of the N+1 lines through `point`, one per striation.
    pub fn lines_through(&self, point: &Point) -> Vec<usize> {
        (0..self.striations.len())
            .map(|s| self.line_index(s, self.label_through(s, point)))
            .collect()
    }

    pub fn translate_point(&self, point: &Point, shift: &Point) -> Point {
        Point::new(
            self.field.add(point.q, shift.q),
            self.field.add(point.p, shift.p),
        )
    }

    /// Global index of `line` translated by `shift`; stays in the same striation.
    pub fn translate_line(&self, line: usize, shift: &Point) -> usize {
        let l = &self.lines[line];
        let dc = self.label_through(l.striation, shift);
        self.line_index(l.striation, self.field.add(l.c, dc))
    }

    /// Smallest-index point on the line; the shift taking the ray onto it.
    pub fn representative(&self, line: usize) -> Point {
        self.lines[line].points[0]
    }

    /// Striation whose ray contains the nonzero point `point`.
    pub fn striation_of(&self, point: &Point) -> Option<usize> {
        if *point == Point::ORIGIN {
            return None;
        }
        (0..self.striations.len()).find(|&s| self.label_through(s, point).is_zero())
    }
}
