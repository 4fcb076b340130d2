use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::motive_ring::{HGPoly, MotiveClass};
use crate::sym_char::common_degree;

/// Direction of the differentials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// `d_r : E_{p,q} -> E_{p-r, q+r-1}`.
    Homological,
    /// `d_r : E^{p,q} -> E^{p+r, q-r+1}`.
    Cohomological,
}

impl Variance {
    pub fn target(self, r: u32, (p, q): (i32, i32)) -> (i32, i32) {
        let r = r as i32;
        match self {
            Variance::Homological => (p - r, q + r - 1),
            Variance::Cohomological => (p + r, q - r + 1),
        }
    }
}

/// The image of one declared differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiffImage {
    Class(MotiveClass),
    /// A dimension count, resolved against the admissible image: either the
    /// admissible image has exactly this dimension, or it has a single
    /// constituent and the rank selects copies of it.
    Rank(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialDecl {
    pub r: u32,
    pub source: (i32, i32),
    pub image: DiffImage,
}

impl DifferentialDecl {
    pub fn image(r: u32, source: (i32, i32), image: MotiveClass) -> Self {
        Self {
            r,
            source,
            image: DiffImage::Class(image),
        }
    }

    pub fn rank(r: u32, source: (i32, i32), rank: i64) -> Self {
        Self {
            r,
            source,
            image: DiffImage::Rank(rank),
        }
    }
}

/// A position where some nonzero differential was possible but none was
/// declared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unresolved {
    pub r: u32,
    pub source: (i32, i32),
    pub target: (i32, i32),
    pub admissible: MotiveClass,
}

impl fmt::Display for Unresolved {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unresolved d_{} at ({},{}) -> ({},{}): admissible image {}",
            self.r, self.source.0, self.source.1, self.target.0, self.target.1, self.admissible
        )
    }
}

/// One page `E_r` of a spectral sequence with Tate-type entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Page {
    variance: Variance,
    start: u32,
    // Invariant: no zero entries; one `n` across all entries.
    entries: BTreeMap<(i32, i32), MotiveClass>,
    // Column range to render, so empty columns of the grid stay visible.
    columns: Option<(i32, i32)>,
}

impl Page {
    pub fn new(variance: Variance, start: u32) -> Self {
        Self {
            variance,
            start,
            entries: BTreeMap::new(),
            columns: None,
        }
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    /// Index of the first page (`E_1`, `E_2`, ...).
    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn n(&self) -> Option<u8> {
        self.entries.values().next().and_then(MotiveClass::n)
    }

    pub fn entry(&self, pos: (i32, i32)) -> MotiveClass {
        self.entries.get(&pos).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((i32, i32), &MotiveClass)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Add `class` to the entry at `pos`.
    pub fn insert(&mut self, pos: (i32, i32), class: &MotiveClass) -> Result<()> {
        let n = common_degree(self.n(), class.n())?;
        let sum = self.entry(pos).add(class)?;
        if sum.is_zero() {
            self.entries.remove(&pos);
        } else {
            self.entries.insert(pos, sum);
        }
        if n != self.n() {
            for v in self.entries.values_mut() {
                *v = v.promote(n);
            }
        }
        let (lo, hi) = self.columns.unwrap_or((pos.0, pos.0));
        self.columns = Some((lo.min(pos.0), hi.max(pos.0)));
        Ok(())
    }

    fn p_span(&self) -> u32 {
        self.columns.map_or(0, |(lo, hi)| (hi - lo) as u32)
    }

    /// Page whose entry `(p, q)` is the product of `rows`' coefficient of
    /// `t^p` and `columns`' coefficient of `t^q` — the `E_2` term of a
    /// fibration with simple coefficients.
    pub fn outer_product(
        variance: Variance,
        start: u32,
        base: &HGPoly,
        fiber: &HGPoly,
    ) -> Result<Self> {
        let mut page = Self::new(variance, start);
        for (p, b) in base.terms() {
            for (q, f) in fiber.terms() {
                page.insert((p, q), &b.mul(f)?)?;
            }
        }
        Ok(page)
    }

    /// Alternating sum `Σ (-1)^{p+q} E_{p,q}`.
    pub fn euler_class(&self) -> MotiveClass {
        self.entries
            .iter()
            .fold(MotiveClass::zero(), |acc, (&(p, q), c)| {
                let signed = if (p + q).rem_euclid(2) == 0 {
                    c.clone()
                } else {
                    c.neg()
                };
                acc.add(&signed).expect("entries share n")
            })
    }

    /// The grid as text: rows `q` descending, columns `p` ascending, entries
    /// in canonical form, cells separated by `" | "`.
    pub fn render_table(&self) -> String {
        let Some((p_lo, p_hi)) = self.columns else {
            return "(empty page)\n".to_string();
        };
        let q_lo = self.entries.keys().map(|k| k.1).min().unwrap_or(0);
        let q_hi = self.entries.keys().map(|k| k.1).max().unwrap_or(0);
        let ps: Vec<i32> = (p_lo..=p_hi).collect();
        let mut rows: Vec<(String, Vec<String>)> = (q_lo..=q_hi)
            .rev()
            .map(|q| {
                let cells = ps.iter().map(|&p| self.entry((p, q)).to_string()).collect();
                (q.to_string(), cells)
            })
            .collect();
        let footer = (
            "".to_string(),
            ps.iter().map(i32::to_string).collect::<Vec<_>>(),
        );
        let label_w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let mut widths: Vec<usize> = footer.1.iter().map(String::len).collect();
        for (_, cells) in &rows {
            for (w, c) in widths.iter_mut().zip(cells) {
                *w = (*w).max(c.len());
            }
        }
        let line = |label: &str, cells: &[String]| -> String {
            let mut s = format!("{label:>label_w$}");
            for (c, w) in cells.iter().zip(&widths) {
                s.push_str(" | ");
                s.push_str(&format!("{c:<w$}"));
            }
            s.trim_end().to_string()
        };
        let mut out = String::new();
        for (label, cells) in rows.drain(..) {
            out.push_str(&line(&label, &cells));
            out.push('\n');
        }
        let rule: String = std::iter::once("-".repeat(label_w + 1))
            .chain(widths.iter().map(|w| "-".repeat(w + 2)))
            .collect::<Vec<_>>()
            .join("+");
        out.push_str(&rule);
        out.push('\n');
        out.push_str(&line(&footer.0, &footer.1));
        out.push('\n');
        out
    }
}

/// Page from Borel–Moore column polynomials: entry `(p, q)` is the
/// coefficient of `t^{p+q}` in column `p`.
pub fn assemble_page(variance: Variance, start: u32, columns: &[(i32, HGPoly)]) -> Result<Page> {
    let mut page = Page::new(variance, start);
    for (i, (p, poly)) in columns.iter().enumerate() {
        if columns[..i].iter().any(|(other, _)| other == p) {
            return Err(Error::InvalidArgument(format!("column {p} given twice")));
        }
        // Empty columns still belong to the grid.
        let (lo, hi) = page.columns.unwrap_or((*p, *p));
        page.columns = Some((lo.min(*p), hi.max(*p)));
        for (d, c) in poly.terms() {
            page.insert((*p, d - p), c)?;
        }
    }
    Ok(page)
}

/// Largest image `d_r` can have at `source`: the constituent-wise minimum of
/// the source and target entries. Zero certifies a forced-zero differential.
pub fn admissible_image(page: &Page, r: u32, source: (i32, i32)) -> MotiveClass {
    let target = page.variance.target(r, source);
    page.entry(source)
        .meet(&page.entry(target))
        .expect("entries share n")
}

fn resolve_image(page: &Page, decl: &DifferentialDecl) -> Result<MotiveClass> {
    let inadmissible = |detail: String| Error::Inadmissible {
        r: decl.r,
        at: decl.source,
        detail,
    };
    let admissible = admissible_image(page, decl.r, decl.source);
    let image = match &decl.image {
        DiffImage::Class(c) => c.clone(),
        DiffImage::Rank(0) => MotiveClass::zero(),
        DiffImage::Rank(k) if *k < 0 => return Err(inadmissible(format!("negative rank {k}"))),
        DiffImage::Rank(k) => {
            if admissible.dimension() == *k {
                admissible.clone()
            } else {
                let mut constituents = admissible.constituents();
                match (constituents.next(), constituents.next()) {
                    (Some((tate, p, _)), None) => {
                        let dim = p.dimension();
                        if k % dim != 0 {
                            return Err(inadmissible(format!(
                                "rank {k} is not a multiple of dim {p} = {dim}"
                            )));
                        }
                        MotiveClass::irreducible(p.clone(), k / dim, tate)
                    }
                    (None, _) => {
                        return Err(inadmissible(format!("rank {k} but the admissible image is 0")))
                    }
                    _ => {
                        return Err(inadmissible(format!(
                            "rank {k} is ambiguous against admissible image {admissible}; declare the image"
                        )))
                    }
                }
            }
        }
    };
    if let Some((tate, p, c)) = image.first_negative() {
        return Err(inadmissible(format!(
            "image has negative coefficient {c} on {p}*L^{tate}"
        )));
    }
    let excess = image.sub(&admissible)?;
    if let Some((tate, p, c)) = excess.constituents().find(|&(_, _, c)| c > 0) {
        let target = page.variance.target(decl.r, decl.source);
        return Err(inadmissible(format!(
            "image exceeds source {} or target {:?} = {} by {c} on {p}*L^{tate}",
            page.entry(decl.source),
            target,
            page.entry(target)
        )));
    }
    Ok(image)
}

/// Limit page after the declared differentials, with warnings for every
/// position where an undeclared differential could still be nonzero.
///
/// Declarations are applied page by page in order of `r`; each image is
/// removed from both its source and its target.
pub fn apply_differentials(
    page: &Page,
    decls: &[DifferentialDecl],
) -> Result<(Page, Vec<Unresolved>)> {
    let before = page.euler_class();
    let mut current = page.clone();
    let mut warnings = Vec::new();
    if let Some(bad) = decls.iter().find(|d| d.r < page.start) {
        return Err(Error::Inadmissible {
            r: bad.r,
            at: bad.source,
            detail: format!("differential precedes the first page E_{}", page.start),
        });
    }
    let last = decls
        .iter()
        .map(|d| d.r)
        .max()
        .unwrap_or(0)
        .max(page.start + page.p_span());
    for r in page.start..=last {
        let mut declared = Vec::new();
        for decl in decls.iter().filter(|d| d.r == r) {
            if declared.contains(&decl.source) {
                return Err(Error::Inadmissible {
                    r,
                    at: decl.source,
                    detail: "declared twice".into(),
                });
            }
            declared.push(decl.source);
            let image = resolve_image(&current, decl)?;
            let target = current.variance.target(r, decl.source);
            current.insert(decl.source, &image.neg())?;
            current.insert(target, &image.neg())?;
        }
        let sources: Vec<(i32, i32)> = current.entries.keys().copied().collect();
        for source in sources {
            if declared.contains(&source) {
                continue;
            }
            let admissible = admissible_image(&current, r, source);
            if !admissible.is_zero() {
                warnings.push(Unresolved {
                    r,
                    source,
                    target: current.variance.target(r, source),
                    admissible,
                });
            }
        }
    }
    if current.euler_class() != before {
        return Err(Error::Internal(
            "Euler characteristic changed by differentials".into(),
        ));
    }
    Ok((current, warnings))
}

/// Abutment: the coefficient of `t^k` is the sum of the entries with `p+q = k`.
pub fn total_poly(page: &Page) -> HGPoly {
    page.entries
        .iter()
        .fold(HGPoly::zero(), |acc, (&(p, q), c)| {
            acc.add(&HGPoly::monomial(c.clone(), p + q))
                .expect("entries share n")
        })
}
