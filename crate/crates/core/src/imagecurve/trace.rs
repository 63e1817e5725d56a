//! Start-point selection and chain-code tracing.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{BinaryImage, ImageCurveError, Pixel};

/// Step `(Δabscissa, Δordinate)` for each direction code; the ordinate grows
/// downwards, so code 2 moves one row up.
pub const DIRECTIONS: [Pixel; 8] = [(1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1)];

/// The code taking `from` to the 8-adjacent pixel `to`.
pub fn direction_code(from: Pixel, to: Pixel) -> Option<u8> {
    let step = (to.0 - from.0, to.1 - from.1);
    DIRECTIONS.iter().position(|&d| d == step).map(|c| c as u8)
}

fn neighbours(image: &BinaryImage, p: Pixel) -> impl Iterator<Item = (u8, Pixel)> + '_ {
    DIRECTIONS.iter().enumerate().filter_map(move |(c, d)| {
        let q = (p.0 + d.0, p.1 + d.1);
        image.is_curve(q.0, q.1).then_some((c as u8, q))
    })
}

/// The curve pixel with the largest ordinate, ties going to the smallest
/// abscissa.
pub fn find_start(image: &BinaryImage) -> Result<Pixel, ImageCurveError> {
    for y in (0..image.rows()).rev() {
        for x in 0..image.cols() {
            if image.get(x, y) == 1 {
                return Ok((x as i64, y as i64));
            }
        }
    }
    Err(ImageCurveError::Empty)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCode {
    pub start: Pixel,
    pub codes: Vec<u8>,
    pub closed: bool,
}

impl ChainCode {
    /// Every position reached by replaying the codes, the start included.
    /// A closed code ends back at the start.
    pub fn replay(&self) -> Vec<Pixel> {
        let mut at = self.start;
        let mut out = Vec::with_capacity(self.codes.len() + 1);
        out.push(at);
        for &c in &self.codes {
            let d = DIRECTIONS[(c & 7) as usize];
            at = (at.0 + d.0, at.1 + d.1);
            out.push(at);
        }
        out
    }

    /// The traced points, one per pixel; the closing step is not repeated.
    pub fn sequences(&self) -> CoordinateSequences {
        let mut path = self.replay();
        if self.closed && !self.codes.is_empty() {
            path.pop();
        }
        CoordinateSequences {
            u: path.iter().map(|p| p.0).collect(),
            v: path.iter().map(|p| p.1).collect(),
        }
    }
}

/// Abscissas `u` and ordinates `v` of the traced pixels, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateSequences {
    pub u: Vec<i64>,
    pub v: Vec<i64>,
}

impl CoordinateSequences {
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = Pixel> + '_ {
        self.u.iter().copied().zip(self.v.iter().copied())
    }
}

/// Traces the single simple curve in `image`.
///
/// Each step takes the lowest-numbered direction that leads to an unvisited
/// curve pixel. When that direction is diagonal and the next code is an
/// axis step to another candidate, the axis step wins: that pixel is the
/// corner of a staircase and would otherwise be cut off. The start is taken
/// back only once nothing else is reachable, which closes the loop.
///
/// A curve without endpoint pixels starts at [`find_start`]; an open curve
/// starts at the endpoint that comes first in the same order.
pub fn trace(image: &BinaryImage) -> Result<(ChainCode, CoordinateSequences), ImageCurveError> {
    let pixels = image.curve_pixels();
    if pixels.is_empty() {
        return Err(ImageCurveError::Empty);
    }
    let start = pixels
        .iter()
        .copied()
        .filter(|&p| neighbours(image, p).count() == 1)
        .max_by_key(|&(x, y)| (y, -x))
        .map_or_else(|| find_start(image), Ok)?;

    let mut position: HashMap<Pixel, usize> = HashMap::with_capacity(pixels.len());
    position.insert(start, 0);
    let mut path = vec![start];
    let mut codes = Vec::new();
    let mut previous: Option<Pixel> = None;
    let mut closed = pixels.len() == 1;
    loop {
        let at = *path.last().expect("path starts non-empty");
        let candidates: Vec<(u8, Pixel)> = neighbours(image, at)
            .filter(|&(_, q)| Some(q) != previous && !position.contains_key(&q))
            .collect();
        let Some(&(mut code, mut next)) = candidates.first() else {
            let back_home = previous != Some(start) && path.len() >= 3;
            if back_home {
                if let Some(c) = direction_code(at, start) {
                    codes.push(c);
                    closed = true;
                }
            }
            break;
        };
        if code % 2 == 1 {
            if let Some(&(c, q)) = candidates.iter().find(|&&(c, _)| c == code + 1) {
                code = c;
                next = q;
            }
        }
        codes.push(code);
        position.insert(next, path.len());
        path.push(next);
        previous = Some(at);
    }

    if path.len() < pixels.len() {
        let stray = pixels
            .iter()
            .copied()
            .find(|p| !position.contains_key(p))
            .expect("fewer path pixels than curve pixels");
        // report the path pixel where the curve forks, if there is one
        let fork = pixels.iter().copied().filter(|p| !position.contains_key(p)).find_map(|p| {
            neighbours(image, p)
                .map(|(_, q)| q)
                .find(|q| position.contains_key(q))
        });
        return Err(match fork {
            Some(p) => ImageCurveError::Branching(p),
            None => ImageCurveError::Disconnected(stray),
        });
    }

    // A simple digital curve only touches itself within a staircase corner:
    // every curve neighbour lies at most two steps away along the path.
    let len = path.len();
    for (i, &p) in path.iter().enumerate() {
        for (_, q) in neighbours(image, p) {
            let j = position[&q];
            let gap = i.abs_diff(j);
            let gap = if closed { gap.min(len - gap) } else { gap };
            if gap > 2 {
                return Err(ImageCurveError::Branching(p));
            }
        }
    }

    let chain = ChainCode { start, codes, closed };
    let seqs = chain.sequences();
    Ok((chain, seqs))
}
