//! Rational points, singularities, tangents and line spectra of plane curves.

mod count;
mod singular;
mod spectrum;

pub use count::{count_points, count_points_with, rational_points, CountReport, CountStrategy, MonomialTable};
pub use singular::{
    certifying_budget, intersection_multiplicity, intersection_multiplicity_via, is_geometrically_nonsingular,
    is_singular_at, singular_rational_points, tangent_line, Multiplicity, Nonsingularity, NonsingularityOptions,
};
pub use spectrum::{
    is_frobenius_nonclassical, lemma_check, lemma_check_with, line_spectrum, line_spectrum_with, summarize,
    summarize_with, CurveSummary, LemmaReport, LineRecord, LineSpectrum,
};
