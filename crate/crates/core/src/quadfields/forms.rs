//! Positive definite binary quadratic forms: reduction and composition.

use num_integer::Integer;
use serde::Serialize;

/// `a x² + b xy + c y²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Form {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// `|b| ≤ a ≤ c`, with `b ≥ 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let Form { a, b, c } = *self;
        b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    /// The unique reduced form properly equivalent to `self` (`a > 0`,
    /// negative discriminant).
    pub fn reduce(self) -> Self {
        let Form {
            mut a,
            mut b,
            mut c,
        } = self;
        debug_assert!(a > 0 && self.discriminant() < 0);
        loop {
            // normalize b into (−a, a]
            if b <= -a || b > a {
                let two_a = 2 * a;
                let r = Integer::div_floor(&(a - b), &two_a);
                let b_new = b + two_a * r;
                c = (b_new * b_new - self.discriminant()) / (4 * a);
                b = b_new;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            return Form { a, b, c };
        }
    }

    pub fn identity(disc: i64) -> Self {
        let b = disc.rem_euclid(2);
        Form::new(1, b, (b * b - disc) / 4)
    }

    pub fn inverse(self) -> Self {
        Form::new(self.a, -self.b, self.c).reduce()
    }

    /// Gaussian composition of two primitive forms of the same
    /// discriminant, reduced.
    pub fn compose(self, other: Self) -> Self {
        let disc = self.discriminant();
        debug_assert_eq!(disc, other.discriminant());
        // a1 ≤ a2
        let (f1, f2) = if self.a <= other.a {
            (self, other)
        } else {
            (other, self)
        };
        let (a1, b1) = (f1.a, f1.b);
        let (a2, b2, c2) = (f2.a, f2.b, f2.c);
        let s = (b1 + b2) / 2;
        let n = b2 - s;
        let (y1, d) = if a2 % a1 == 0 {
            (0, a1)
        } else {
            let e = a2.extended_gcd(&a1);
            (e.x, e.gcd)
        };
        let (x2, y2, d1) = if s % d == 0 {
            (0, -1, d)
        } else {
            let e = s.extended_gcd(&d);
            (e.x, -e.y, e.gcd)
        };
        let v1 = a1 / d1;
        let v2 = a2 / d1;
        let r = (y1 as i128 * y2 as i128 * n as i128 - x2 as i128 * c2 as i128)
            .rem_euclid(v1 as i128) as i64;
        let b3 = b2 + 2 * v2 * r;
        let a3 = v1 * v2;
        let c3 = (b3 * b3 - disc) / (4 * a3);
        Form::new(a3, b3, c3).reduce()
    }
}

/// Every reduced primitive form of discriminant `disc < 0`.
pub fn reduced_forms(disc: i64) -> Vec<Form> {
    debug_assert!(disc < 0);
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= -disc {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = Form::new(a, b, num / (4 * a));
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}
