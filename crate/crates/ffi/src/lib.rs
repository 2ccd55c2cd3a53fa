//! C ABI for `discrete-curves`.
//!
//! Curves are opaque `DcCurve` handles created by `dc_curve_new` or
//! `dc_regular_polygon` and released with `dc_curve_free`. Every fallible
//! function returns a `DcStatus`; on failure `dc_last_error_message` holds a
//! description for the calling thread. Output pointers are written only on
//! success. Panics never cross the boundary and surface as `DC_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use discrete_curves::curve::{regular_polygon, DiscreteCurve, RegularPolygonSpec, Sigma};
use discrete_curves::flow::{run_flow, FlowConfig, FlowVerdict, VolumeCorrection};
use discrete_curves::offsets::{offset_length, parallel_curve, OffsetVariant};
use discrete_curves::stability::{instability_certificate, jacobi_spectrum, morse_index};
use discrete_curves::variation::{classify_equilibrium, estimate_kappa, EquilibriumReport};
use discrete_curves::{curvature, CurveError, LineElementScheme, Vec2};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ZeroEdge = 3,
    TooFewVertices = 4,
    InvalidWinding = 5,
    OpenCurve = 6,
    Cusp = 7,
    SchemeInapplicable = 8,
    KappaZero = 9,
    EdgeCollapse = 10,
    NotEquilibrium = 11,
    Degenerate = 12,
    BufferTooSmall = 13,
    Internal = 14,
    Panic = 15,
}

/// Line-element scheme for `dc_vertex_curvature`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcScheme {
    VertexOsculating = 0,
    Arclength = 1,
    Hatakeyama = 2,
    HalfEdgeSum = 3,
}

/// Corner treatment for `dc_offset_length`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcOffsetVariant {
    Segment = 0,
    Arc = 1,
    Wedge = 2,
}

/// Opaque curve handle.
pub struct DcCurve(DiscreteCurve);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DcEquilibriumReport {
    pub is_equilibrium: bool,
    pub max_residual: f64,
    pub l0: f64,
    pub theta0: f64,
    pub kappa: f64,
    pub n: usize,
    /// `winding` is meaningful only when this is set.
    pub has_winding: bool,
    pub winding: i64,
    pub length_spread: f64,
    pub angle_spread: f64,
    pub tolerance_used: f64,
    pub sigma: i32,
}

impl From<&EquilibriumReport> for DcEquilibriumReport {
    fn from(r: &EquilibriumReport) -> Self {
        Self {
            is_equilibrium: r.is_equilibrium,
            max_residual: r.max_residual,
            l0: r.l0,
            theta0: r.theta0,
            kappa: r.kappa,
            n: r.n,
            has_winding: r.winding.is_some(),
            winding: r.winding.unwrap_or(0),
            length_spread: r.length_spread,
            angle_spread: r.angle_spread,
            tolerance_used: r.tolerance_used,
            sigma: r.sigma,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DcFlowConfig {
    pub step_size: f64,
    pub max_steps: usize,
    pub grad_tolerance: f64,
    /// Skip the rescaling that restores the volume after each step.
    pub project_only: bool,
    pub record_every: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcFlowVerdict {
    Converged = 0,
    MaxSteps = 1,
    Degenerated = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DcFlowResult {
    pub verdict: DcFlowVerdict,
    pub steps: usize,
    pub final_length: f64,
    pub final_volume: f64,
    pub final_gradnorm: f64,
    pub max_volume_drift: f64,
    /// Filled when `verdict` is `Converged`.
    pub report: DcEquilibriumReport,
}

struct Failure {
    status: DcStatus,
    message: String,
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        let status = match &e {
            CurveError::ZeroEdge { .. } => DcStatus::ZeroEdge,
            CurveError::TooFewVertices { .. } => DcStatus::TooFewVertices,
            CurveError::InvalidWinding { .. } => DcStatus::InvalidWinding,
            CurveError::OpenCurve => DcStatus::OpenCurve,
            CurveError::CuspVertex { .. } | CurveError::CuspAdjacent { .. } => DcStatus::Cusp,
            CurveError::SchemeInapplicable { .. } => DcStatus::SchemeInapplicable,
            CurveError::KappaZero => DcStatus::KappaZero,
            CurveError::EdgeCollapse { .. } => DcStatus::EdgeCollapse,
            CurveError::NotEquilibrium { .. } => DcStatus::NotEquilibrium,
            CurveError::NonIntegerTurning { .. }
            | CurveError::ZeroVolumeGradient
            | CurveError::StepProducedZeroEdge { .. } => DcStatus::Degenerate,
            CurveError::InternalInconsistency(_) => DcStatus::Internal,
            CurveError::InvalidArgument(_)
            | CurveError::IndexOutOfRange { .. }
            | CurveError::LengthMismatch { .. }
            | CurveError::BoundaryNotFixed { .. }
            | CurveError::MeanNotZero { .. } => DcStatus::InvalidArgument,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn fail(status: DcStatus, message: impl Into<String>) -> Failure {
    Failure {
        status,
        message: message.into(),
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            DcStatus::Ok
        }
        Ok(Err(failure)) => {
            set_last_error(&failure.message);
            failure.status
        }
        Err(_) => {
            set_last_error("panic inside discrete-curves");
            DcStatus::Panic
        }
    }
}

unsafe fn curve_ref<'a>(curve: *const DcCurve) -> Result<&'a DiscreteCurve, Failure> {
    curve
        .as_ref()
        .map(|c| &c.0)
        .ok_or_else(|| fail(DcStatus::NullPointer, "curve handle is null"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(DcStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(fail(DcStatus::NullPointer, "output pointer is null"))
    } else {
        Ok(())
    }
}

fn sigma_from(sigma: i32) -> Result<Sigma, Failure> {
    Sigma::from_i32(sigma).ok_or_else(|| fail(DcStatus::InvalidArgument, format!("sigma must be 1 or -1, got {sigma}")))
}

fn boxed(curve: DiscreteCurve) -> *mut DcCurve {
    Box::into_raw(Box::new(DcCurve(curve)))
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn dc_status_message(status: DcStatus) -> *const c_char {
    let s: &'static CStr = match status {
        DcStatus::Ok => c"ok",
        DcStatus::NullPointer => c"null pointer argument",
        DcStatus::InvalidArgument => c"invalid argument",
        DcStatus::ZeroEdge => c"zero-length edge",
        DcStatus::TooFewVertices => c"too few vertices",
        DcStatus::InvalidWinding => c"invalid winding",
        DcStatus::OpenCurve => c"operation requires a closed curve",
        DcStatus::Cusp => c"cusp vertex",
        DcStatus::SchemeInapplicable => c"line-element scheme not applicable",
        DcStatus::KappaZero => c"kappa must be nonzero",
        DcStatus::EdgeCollapse => c"offset edge collapses",
        DcStatus::NotEquilibrium => c"curve is not an equilibrium",
        DcStatus::Degenerate => c"numerically degenerate configuration",
        DcStatus::BufferTooSmall => c"buffer too small",
        DcStatus::Internal => c"internal inconsistency",
        DcStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn dc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dc_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(s) => s,
        Err(_) => c"unknown",
    };
    VERSION.as_ptr()
}

/// Creates a curve from `n` interleaved coordinates `xy[2k], xy[2k+1]`.
///
/// # Safety
/// `xy` must point to `2 * n` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_curve_new(xy: *const f64, n: usize, closed: bool, sigma: i32, out: *mut *mut DcCurve) -> DcStatus {
    guard(|| {
        check_out(out)?;
        if xy.is_null() {
            return Err(fail(DcStatus::NullPointer, "coordinate pointer is null"));
        }
        let coords = std::slice::from_raw_parts(xy, 2 * n);
        let points = coords.chunks_exact(2).map(|p| Vec2::new(p[0], p[1])).collect();
        let curve = DiscreteCurve::new(points, closed, sigma_from(sigma)?)?;
        write(out, boxed(curve))
    })
}

/// Creates the regular polygon `a exp(i (2 pi m k / n + phase))`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_regular_polygon(n: usize, m: usize, radius: f64, phase: f64, sigma: i32, out: *mut *mut DcCurve) -> DcStatus {
    guard(|| {
        check_out(out)?;
        let spec = RegularPolygonSpec::new(n, m, radius).with_phase(phase).with_sigma(sigma_from(sigma)?);
        write(out, boxed(regular_polygon(&spec)?))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `curve` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dc_curve_free(curve: *mut DcCurve) {
    if !curve.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(curve))));
    }
}

/// Number of vertices.
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_curve_len(curve: *const DcCurve, out: *mut usize) -> DcStatus {
    guard(|| write(out, curve_ref(curve)?.vertex_count()))
}

/// Copies the interleaved coordinates into `buf` (capacity `cap` doubles).
/// `required` receives `2 * n` in every case where the handle is valid.
///
/// # Safety
/// `buf` must be writable for `cap` doubles; `required` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_curve_points(curve: *const DcCurve, buf: *mut f64, cap: usize, required: *mut usize) -> DcStatus {
    guard(|| {
        let c = curve_ref(curve)?;
        let need = 2 * c.vertex_count();
        write(required, need)?;
        if cap < need {
            return Err(fail(DcStatus::BufferTooSmall, format!("need {need} doubles, got {cap}")));
        }
        if buf.is_null() {
            return Err(fail(DcStatus::NullPointer, "buffer is null"));
        }
        for (k, p) in c.points().iter().enumerate() {
            buf.add(2 * k).write(p.x);
            buf.add(2 * k + 1).write(p.y);
        }
        Ok(())
    })
}

/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_total_length(curve: *const DcCurve, out: *mut f64) -> DcStatus {
    guard(|| write(out, curve_ref(curve)?.total_length()))
}

/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_enclosed_volume(curve: *const DcCurve, out: *mut f64) -> DcStatus {
    guard(|| write(out, curve_ref(curve)?.enclosed_volume()?))
}

/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_turning_number(curve: *const DcCurve, out: *mut i64) -> DcStatus {
    guard(|| write(out, curve_ref(curve)?.turning_number()?))
}

/// Vertex curvature `2 sin(theta_k / 2) / L_k` under `scheme`.
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_vertex_curvature(curve: *const DcCurve, scheme: DcScheme, k: usize, out: *mut f64) -> DcStatus {
    guard(|| {
        let scheme = match scheme {
            DcScheme::VertexOsculating => LineElementScheme::VertexOsculating,
            DcScheme::Arclength => LineElementScheme::Arclength,
            DcScheme::Hatakeyama => LineElementScheme::Hatakeyama,
            DcScheme::HalfEdgeSum => LineElementScheme::HalfEdgeSum,
        };
        write(out, curvature::vertex_curvature(curve_ref(curve)?, &scheme, k)?)
    })
}

/// Edge curvature `(tan(theta_k / 2) + tan(theta_{k+1} / 2)) / l_k`.
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_edge_curvature(curve: *const DcCurve, k: usize, out: *mut f64) -> DcStatus {
    guard(|| write(out, curvature::edge_curvature(curve_ref(curve)?, k)?))
}

/// Least-squares Lagrange multiplier `-<grad L, grad Vol> / |grad Vol|^2`.
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_estimate_kappa(curve: *const DcCurve, out: *mut f64) -> DcStatus {
    guard(|| write(out, estimate_kappa(curve_ref(curve)?)?))
}

/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_classify_equilibrium(curve: *const DcCurve, kappa: f64, tol: f64, out: *mut DcEquilibriumReport) -> DcStatus {
    guard(|| {
        let report = classify_equilibrium(curve_ref(curve)?, kappa, tol)?;
        write(out, DcEquilibriumReport::from(&report))
    })
}

/// Parallel curve `p_k + t N_k` as a new handle.
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_parallel_curve(curve: *const DcCurve, t: f64, out: *mut *mut DcCurve) -> DcStatus {
    guard(|| {
        check_out(out)?;
        let offset = parallel_curve(curve_ref(curve)?, t)?;
        write(out, boxed(offset))
    })
}

/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_offset_length(curve: *const DcCurve, t: f64, variant: DcOffsetVariant, out: *mut f64) -> DcStatus {
    guard(|| {
        let variant = match variant {
            DcOffsetVariant::Segment => OffsetVariant::Segment,
            DcOffsetVariant::Arc => OffsetVariant::Arc,
            DcOffsetVariant::Wedge => OffsetVariant::Wedge,
        };
        write(out, offset_length(curve_ref(curve)?, t, variant)?)
    })
}

/// Eigenvalues `lambda_1 .. lambda_{n-1}` of the Jacobi matrix of
/// `Gamma^{m,n}`. `len` receives `n - 1`.
///
/// # Safety
/// `buf` must be writable for `cap` doubles; `len` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_jacobi_eigenvalues(n: usize, m: usize, buf: *mut f64, cap: usize, len: *mut usize) -> DcStatus {
    guard(|| {
        let spectrum = jacobi_spectrum(n, m)?;
        write(len, spectrum.eigenvalues.len())?;
        if cap < spectrum.eigenvalues.len() {
            return Err(fail(DcStatus::BufferTooSmall, format!("need {} doubles, got {cap}", spectrum.eigenvalues.len())));
        }
        if buf.is_null() {
            return Err(fail(DcStatus::NullPointer, "buffer is null"));
        }
        ptr::copy_nonoverlapping(spectrum.eigenvalues.as_ptr(), buf, spectrum.eigenvalues.len());
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_morse_index(n: usize, m: usize, out: *mut usize) -> DcStatus {
    guard(|| write(out, morse_index(n, m)?))
}

/// Second variation of `Gamma^{m,n}(radius)` per unit `sum psi_k^2` along
/// `psi_k = cos(2 pi k / n)`; negative means unstable.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_instability_coefficient(n: usize, m: usize, radius: f64, out: *mut f64) -> DcStatus {
    guard(|| write(out, instability_certificate(n, m, radius)?.coefficient))
}

/// Default flow parameters.
#[no_mangle]
pub extern "C" fn dc_flow_config_default() -> DcFlowConfig {
    let c = FlowConfig::default();
    DcFlowConfig {
        step_size: c.step_size,
        max_steps: c.max_steps,
        grad_tolerance: c.grad_tolerance,
        project_only: c.volume_correction == VolumeCorrection::ProjectOnly,
        record_every: c.record_every,
    }
}

/// Runs the area-preserving descent. `out_curve` may be null; otherwise it
/// receives a new handle with the final polygon.
///
/// # Safety
/// `curve` and `config` must be valid; `out` writable; `out_curve` null or writable.
#[no_mangle]
pub unsafe extern "C" fn dc_run_flow(
    curve: *const DcCurve,
    config: *const DcFlowConfig,
    out: *mut DcFlowResult,
    out_curve: *mut *mut DcCurve,
) -> DcStatus {
    guard(|| {
        check_out(out)?;
        let c = curve_ref(curve)?;
        let cfg = config.as_ref().ok_or_else(|| fail(DcStatus::NullPointer, "config is null"))?;
        let config = FlowConfig {
            step_size: cfg.step_size,
            max_steps: cfg.max_steps,
            grad_tolerance: cfg.grad_tolerance,
            volume_correction: if cfg.project_only {
                VolumeCorrection::ProjectOnly
            } else {
                VolumeCorrection::ProjectAndRescale
            },
            record_every: cfg.record_every,
        };
        let trajectory = run_flow(c, &config)?;
        let last = trajectory.snapshots.last().expect("trajectory has a snapshot");
        let (verdict, report) = match &trajectory.verdict {
            FlowVerdict::Converged(r) => (DcFlowVerdict::Converged, DcEquilibriumReport::from(r)),
            FlowVerdict::MaxSteps => (DcFlowVerdict::MaxSteps, DcEquilibriumReport::default()),
            FlowVerdict::Degenerated { reason, .. } => {
                set_last_error(reason);
                (DcFlowVerdict::Degenerated, DcEquilibriumReport::default())
            }
        };
        write(
            out,
            DcFlowResult {
                verdict,
                steps: trajectory.steps,
                final_length: last.length,
                final_volume: last.volume,
                final_gradnorm: last.max_projected_gradient,
                max_volume_drift: trajectory.max_volume_drift(),
                report,
            },
        )?;
        if !out_curve.is_null() {
            out_curve.write(boxed(last.curve.clone()));
        }
        Ok(())
    })
}
