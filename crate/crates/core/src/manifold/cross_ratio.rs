use crate::error::{BlochError, Result};
use crate::numberfield::FieldElement;

/// A point of the projective line over a number field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Point {
    Finite(FieldElement),
    Infinity,
}

impl From<FieldElement> for Point {
    fn from(z: FieldElement) -> Self {
        Point::Finite(z)
    }
}

/// (a2 - a1)(a3 - a0) / ((a2 - a0)(a3 - a1)), with the two factors that
/// contain an infinite point dropped.
pub fn cross_ratio(a: [&Point; 4]) -> Result<FieldElement> {
    for i in 0..4 {
        for j in i + 1..4 {
            if a[i] == a[j] {
                return Err(BlochError::CoincidentPoints(format!("vertices {i} and {j} coincide")));
            }
        }
    }
    let field = a
        .iter()
        .find_map(|p| match p {
            Point::Finite(z) => Some(z.field().clone()),
            Point::Infinity => None,
        })
        .ok_or_else(|| BlochError::InvalidInput("no finite vertex".into()))?;
    for p in a {
        if let Point::Finite(z) = p {
            if z.field() != &field {
                return Err(BlochError::InvalidInput("vertices lie in different fields".into()));
            }
        }
    }
    let diff = |i: usize, j: usize| -> Option<FieldElement> {
        match (a[i], a[j]) {
            (Point::Finite(x), Point::Finite(y)) => Some(x - y),
            _ => None,
        }
    };
    let mut num = field.one();
    let mut den = field.one();
    for (i, j) in [(2, 1), (3, 0)] {
        if let Some(d) = diff(i, j) {
            num = &num * &d;
        }
    }
    for (i, j) in [(2, 0), (3, 1)] {
        if let Some(d) = diff(i, j) {
            den = &den * &d;
        }
    }
    Ok(&num * &den.inverse()?)
}
