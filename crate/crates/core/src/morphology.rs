//! Binary dilations as join-endomorphisms of the powerset of a pixel grid.
//!
//! A subset of the grid is encoded as a bitmask with pixel `(x, y)` at bit
//! `y * width + x`; that mask is also its element id in
//! [`LatticeSpec::Powerset`]. Dilation results are clipped to the grid.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::endo::Endofunction;
use crate::error::{Error, Result};
use crate::glb::Algorithm;
use crate::lattice::{ElementId, Lattice, LatticeSpec};

/// Largest grid (in pixels) backed by an explicit powerset lattice.
pub const MAX_LATTICE_PIXELS: usize = 10;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    on: Vec<bool>,
}

impl BinaryImage {
    pub fn empty(width: usize, height: usize) -> Self {
        BinaryImage {
            width,
            height,
            on: vec![false; width * height],
        }
    }

    pub fn from_pixels(width: usize, height: usize, pixels: &[(usize, usize)]) -> Result<Self> {
        let mut img = Self::empty(width, height);
        for &(x, y) in pixels {
            if x >= width || y >= height {
                return Err(Error::OutOfRange {
                    value: if x >= width { x } else { y },
                    expected: format!("pixel inside {width}×{height}"),
                });
            }
            img.set(x, y, true);
        }
        Ok(img)
    }

    /// Image whose pixel `y * width + x` is on when that bit of `mask` is set.
    pub fn from_mask(width: usize, height: usize, mask: u64) -> Self {
        let mut img = Self::empty(width, height);
        for i in 0..width * height {
            img.on[i] = mask >> i & 1 == 1;
        }
        img
    }

    /// Inverse of [`from_mask`](Self::from_mask); grids of at most 64 pixels.
    pub fn to_mask(&self) -> u64 {
        assert!(self.on.len() <= 64, "mask encoding needs at most 64 pixels");
        self.on
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.on[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.on[y * self.width + x] = value;
    }

    pub fn on_pixels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width;
        self.on.iter().enumerate().filter(|(_, &b)| b).map(move |(i, _)| (i % w, i / w))
    }

    pub fn count(&self) -> usize {
        self.on.iter().filter(|&&b| b).count()
    }

    pub fn union(&self, other: &BinaryImage) -> BinaryImage {
        self.zip(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &BinaryImage) -> BinaryImage {
        self.zip(other, |a, b| a && b)
    }

    pub fn is_subset(&self, other: &BinaryImage) -> bool {
        self.on.iter().zip(&other.on).all(|(&a, &b)| !a || b)
    }

    fn zip(&self, other: &BinaryImage, op: impl Fn(bool, bool) -> bool) -> BinaryImage {
        assert_eq!((self.width, self.height), (other.width, other.height), "image sizes differ");
        BinaryImage {
            width: self.width,
            height: self.height,
            on: self.on.iter().zip(&other.on).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    /// Rows of `.` (off) and `#` (on).
    pub fn parse_text(text: &str) -> Result<Self> {
        let rows: Vec<&str> = text.lines().map(str::trim_end).filter(|l| !l.is_empty()).collect();
        let width = rows.first().map_or(0, |r| r.chars().count());
        let mut img = Self::empty(width, rows.len());
        for (y, row) in rows.iter().enumerate() {
            if row.chars().count() != width {
                return Err(Error::Parse(format!("row {} has {} pixels, expected {width}", y + 1, row.chars().count())));
            }
            for (x, c) in row.chars().enumerate() {
                match c {
                    '#' => img.set(x, y, true),
                    '.' => {}
                    other => return Err(Error::Parse(format!("unexpected `{other}` in image row {}", y + 1))),
                }
            }
        }
        Ok(img)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for y in 0..self.height {
            for x in 0..self.width {
                out.push(if self.get(x, y) { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    /// Plain PBM (`P1`); `1` is an on pixel.
    pub fn parse_pbm(text: &str) -> Result<Self> {
        let body: String = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join("\n");
        let mut tokens = body.split_whitespace();
        if tokens.next() != Some("P1") {
            return Err(Error::Parse("missing P1 header".into()));
        }
        let mut dim = || -> Result<usize> {
            tokens
                .next()
                .ok_or_else(|| Error::Parse("missing image dimensions".into()))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad dimension: {e}")))
        };
        let (width, height) = (dim()?, dim()?);
        let bits: Vec<bool> = tokens
            .flat_map(str::chars)
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected `{other}` in PBM data"))),
            })
            .collect::<Result<_>>()?;
        if bits.len() != width * height {
            return Err(Error::Parse(format!("expected {} pixels, found {}", width * height, bits.len())));
        }
        Ok(BinaryImage { width, height, on: bits })
    }

    pub fn to_pbm(&self) -> String {
        let mut out = format!("P1\n{} {}\n", self.width, self.height);
        for y in 0..self.height {
            let row: Vec<&str> = (0..self.width).map(|x| if self.get(x, y) { "1" } else { "0" }).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Reads either format, choosing PBM when the text starts with `P1`.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with("P1") {
            Self::parse_pbm(text)
        } else {
            Self::parse_text(text)
        }
    }
}

impl fmt::Debug for BinaryImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryImage {}×{}\n{}", self.width, self.height, self.to_text())
    }
}

impl fmt::Display for BinaryImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A finite set of offsets relative to the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructuringElement {
    offsets: BTreeSet<(i32, i32)>,
}

impl StructuringElement {
    pub const CATALOG: [&'static str; 7] = ["point", "cross", "square", "hline", "vline", "diag", "empty"];

    pub fn new(offsets: impl IntoIterator<Item = (i32, i32)>) -> Self {
        StructuringElement {
            offsets: offsets.into_iter().collect(),
        }
    }

    pub fn named(name: &str) -> Option<Self> {
        let offsets: Vec<(i32, i32)> = match name {
            "point" => vec![(0, 0)],
            "cross" => vec![(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)],
            "square" => (-1..=1).flat_map(|dy| (-1..=1).map(move |dx| (dx, dy))).collect(),
            "hline" => vec![(-1, 0), (0, 0), (1, 0)],
            "vline" => vec![(0, -1), (0, 0), (0, 1)],
            "diag" => vec![(0, 0), (1, 1)],
            "empty" => vec![],
            _ => return None,
        };
        Some(Self::new(offsets))
    }

    pub fn offsets(&self) -> impl Iterator<Item = (i32, i32)> + '_ {
        self.offsets.iter().copied()
    }

    pub fn intersection(&self, other: &StructuringElement) -> StructuringElement {
        StructuringElement {
            offsets: self.offsets.intersection(&other.offsets).copied().collect(),
        }
    }

    pub fn intersect_all(ses: &[StructuringElement]) -> StructuringElement {
        ses.split_first().map_or_else(
            || Self::new([]),
            |(first, rest)| rest.iter().fold(first.clone(), |acc, s| acc.intersection(s)),
        )
    }
}

/// A catalog name, or offsets written `dx,dy;dx,dy;…`.
impl FromStr for StructuringElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(se) = Self::named(s) {
            return Ok(se);
        }
        let parse_pair = |p: &str| -> Result<(i32, i32)> {
            let (x, y) = p
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("offset `{p}` should be `dx,dy`")))?;
            let num = |t: &str| t.trim().parse::<i32>().map_err(|e| Error::Parse(format!("offset `{p}`: {e}")));
            Ok((num(x)?, num(y)?))
        };
        s.split(';')
            .filter(|p| !p.trim().is_empty())
            .map(parse_pair)
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
            .map_err(|_| {
                Error::Parse(format!(
                    "unknown structuring element `{s}`; use one of {} or `dx,dy;…`",
                    Self::CATALOG.join(", ")
                ))
            })
    }
}

/// `{p + o | p on, o ∈ se}`, clipped to the image bounds.
pub fn dilate(image: &BinaryImage, se: &StructuringElement) -> BinaryImage {
    let mut out = BinaryImage::empty(image.width, image.height);
    for (x, y) in image.on_pixels() {
        for (dx, dy) in se.offsets() {
            let (nx, ny) = (x as i64 + dx as i64, y as i64 + dy as i64);
            if (0..image.width as i64).contains(&nx) && (0..image.height as i64).contains(&ny) {
                out.set(nx as usize, ny as usize, true);
            }
        }
    }
    out
}

/// The powerset lattice of a `width × height` grid.
pub fn pixel_lattice(width: usize, height: usize) -> Result<Lattice> {
    let pixels = width * height;
    if pixels > MAX_LATTICE_PIXELS {
        return Err(Error::BudgetExceeded {
            estimated: 1u128 << pixels.min(127),
            budget: 1 << MAX_LATTICE_PIXELS,
        });
    }
    LatticeSpec::Powerset(pixels).build()
}

/// Dilation by `se` as a self-map of `lattice`, which must be the pixel
/// lattice of the grid.
pub fn dilation_as_endofunction(
    width: usize,
    height: usize,
    se: &StructuringElement,
    lattice: &Lattice,
) -> Result<Endofunction> {
    let pixels = width * height;
    if pixels > MAX_LATTICE_PIXELS {
        return Err(Error::BudgetExceeded {
            estimated: 1u128 << pixels.min(127),
            budget: 1 << MAX_LATTICE_PIXELS,
        });
    }
    if lattice.size() != 1 << pixels {
        return Err(Error::SizeMismatch {
            expected: 1 << pixels,
            got: lattice.size(),
        });
    }
    let values = (0..lattice.size() as u64)
        .map(|mask| ElementId(dilate(&BinaryImage::from_mask(width, height, mask), se).to_mask() as u32))
        .collect();
    Endofunction::new(lattice, values)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilationMeet {
    /// The glb of the dilation maps, applied to the image.
    pub via_lattice: BinaryImage,
    /// Dilation by the intersection of the structuring elements.
    pub via_intersection: BinaryImage,
    pub algorithm: Algorithm,
}

impl DilationMeet {
    pub fn agree(&self) -> bool {
        self.via_lattice == self.via_intersection
    }
}

/// Dilation by the intersection of `ses`; works on any grid size.
pub fn meet_of_dilations_direct(image: &BinaryImage, ses: &[StructuringElement]) -> BinaryImage {
    dilate(image, &StructuringElement::intersect_all(ses))
}

/// Greatest lower bound of the dilations by `ses`, computed with
/// `algorithm` on the pixel lattice and applied to `image`, next to the
/// direct intersected-element result.
pub fn meet_of_dilations(
    image: &BinaryImage,
    ses: &[StructuringElement],
    algorithm: Algorithm,
) -> Result<DilationMeet> {
    let lattice = pixel_lattice(image.width, image.height)?;
    meet_of_dilations_on(&lattice, image, ses, algorithm)
}

/// [`meet_of_dilations`] reusing an already built pixel lattice.
pub fn meet_of_dilations_on(
    lattice: &Lattice,
    image: &BinaryImage,
    ses: &[StructuringElement],
    algorithm: Algorithm,
) -> Result<DilationMeet> {
    let maps = ses
        .iter()
        .map(|se| dilation_as_endofunction(image.width, image.height, se, lattice))
        .collect::<Result<Vec<_>>>()?;
    let glb = algorithm.run(lattice, &maps)?.result;
    let applied = glb.apply(ElementId(image.to_mask() as u32));
    Ok(DilationMeet {
        via_lattice: BinaryImage::from_mask(image.width, image.height, applied.0 as u64),
        via_intersection: meet_of_dilations_direct(image, ses),
        algorithm,
    })
}
