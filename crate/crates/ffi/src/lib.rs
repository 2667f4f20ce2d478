//! C interface to the cmapf toolkit.
//!
//! Every function returns a [`CmapfStatus`]. On failure a message is kept
//! per thread and can be read with [`cmapf_last_error`]. Handles are opaque
//! and must be released with the matching `_free` function. Functions that
//! fill a caller buffer always store the required length; when the buffer
//! is too short they return `CMAPF_STATUS_BUFFER_TOO_SMALL` and write nothing.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use cmapf::cmis::{exact_cmis, maximal_independent, SelectionRule};
use cmapf::io::InstanceFile;
use cmapf::planner::{oracle_cmapf, solve_cmapf, validate_plan, Plan, SolveOptions, Verdict, DEFAULT_ORACLE_STATE_CAP};
use cmapf::reduction::is_independent;
use cmapf::{Error, VertexSet};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmapfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    BufferTooSmall = 5,
    BudgetExceeded = 6,
    InvalidPlan = 7,
    Internal = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmapfRule {
    Random = 0,
    GreedyPsi = 1,
    GreedyDegree = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmapfVerdict {
    Feasible = 0,
    InfeasibleViaReduction = 1,
    ProvenInfeasible = 2,
}

/// Parsed instance file.
pub struct CmapfInstance {
    file: InstanceFile,
}

/// Sequence of moves.
pub struct CmapfPlan {
    plan: Plan,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: CmapfStatus, msg: impl Into<String>) -> CmapfStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> CmapfStatus {
    let status = match e {
        Error::Parse { .. } => CmapfStatus::ParseError,
        Error::StateBudgetExceeded(_) | Error::OracleBudgetExceeded(_) => CmapfStatus::BudgetExceeded,
        Error::TransitionUndefined { .. } | Error::ConstraintBreach { .. } | Error::GoalNotReached(_) => {
            CmapfStatus::InvalidPlan
        }
        Error::LiftValidation(_) => CmapfStatus::Internal,
        _ => CmapfStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guard<F: FnOnce() -> CmapfStatus>(f: F) -> CmapfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(CmapfStatus::Panic, "panic inside cmapf"))
}

/// # Safety
/// `ptr` must be null or point to `len` readable values.
unsafe fn vertex_set(ptr: *const usize, len: usize) -> Result<VertexSet, CmapfStatus> {
    if len == 0 {
        return Ok(VertexSet::new());
    }
    if ptr.is_null() {
        return Err(fail(CmapfStatus::NullPointer, "vertex array is null"));
    }
    Ok(std::slice::from_raw_parts(ptr, len).iter().copied().collect())
}

/// # Safety
/// `buf` must be null or point to `cap` writable values; `len` must be valid.
unsafe fn write_set(set: &VertexSet, buf: *mut usize, cap: usize, len: *mut usize) -> CmapfStatus {
    *len = set.len();
    if set.len() > cap {
        return fail(
            CmapfStatus::BufferTooSmall,
            format!("need room for {} vertices", set.len()),
        );
    }
    if set.is_empty() {
        return CmapfStatus::Ok;
    }
    if buf.is_null() {
        return fail(CmapfStatus::NullPointer, "output buffer is null");
    }
    for (i, v) in set.iter().enumerate() {
        *buf.add(i) = v;
    }
    CmapfStatus::Ok
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next cmapf call on the same thread.
#[no_mangle]
pub extern "C" fn cmapf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses an instance file from a NUL-terminated UTF-8 string.
///
/// # Safety
/// `text` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cmapf_instance_parse(text: *const c_char, out: *mut *mut CmapfInstance) -> CmapfStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(CmapfStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(CmapfStatus::InvalidUtf8, "instance text is not UTF-8");
        };
        match InstanceFile::parse(text) {
            Ok(file) => {
                *out = Box::into_raw(Box::new(CmapfInstance { file }));
                CmapfStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `inst` must be null or a handle from [`cmapf_instance_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cmapf_instance_free(inst: *mut CmapfInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cmapf_instance_vertex_count(inst: *const CmapfInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.file.graph.vertex_count())
}

/// Whether `w` is admissible with a strongly connected reduced graph.
///
/// # Safety
/// `inst` must be a live handle, `w` must point to `w_len` values and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn cmapf_is_independent(
    inst: *const CmapfInstance,
    w: *const usize,
    w_len: usize,
    out: *mut bool,
) -> CmapfStatus {
    guard(|| {
        let (Some(inst), false) = (inst.as_ref(), out.is_null()) else {
            return fail(CmapfStatus::NullPointer, "null argument");
        };
        let w = match vertex_set(w, w_len) {
            Ok(w) => w,
            Err(s) => return s,
        };
        match is_independent(&inst.file.graph, &inst.file.constraints, &w) {
            Ok(b) => {
                *out = b;
                CmapfStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Grows a maximal independent set from the instance seed.
///
/// # Safety
/// `inst` must be a live handle, `buf` must hold `cap` values and `len` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn cmapf_maximal_independent(
    inst: *const CmapfInstance,
    rule: CmapfRule,
    seed: u64,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> CmapfStatus {
    guard(|| {
        let (Some(inst), false) = (inst.as_ref(), len.is_null()) else {
            return fail(CmapfStatus::NullPointer, "null argument");
        };
        let rule = match rule {
            CmapfRule::Random => SelectionRule::Random { seed },
            CmapfRule::GreedyPsi => SelectionRule::GreedyPsi,
            CmapfRule::GreedyDegree => SelectionRule::GreedyDegree,
        };
        match inst.file.to_cmis().and_then(|c| maximal_independent(&c, rule)) {
            Ok(set) => write_set(&set, buf, cap, len),
            Err(e) => from_error(e),
        }
    })
}

/// Maximum independent superset of the instance seed. A non-positive
/// `budget_secs` means no time limit; `proven` is false when the budget ran out.
///
/// # Safety
/// As for [`cmapf_maximal_independent`]; `proven` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cmapf_exact_cmis(
    inst: *const CmapfInstance,
    budget_secs: f64,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
    proven: *mut bool,
) -> CmapfStatus {
    guard(|| {
        let (Some(inst), false, false) = (inst.as_ref(), len.is_null(), proven.is_null()) else {
            return fail(CmapfStatus::NullPointer, "null argument");
        };
        let budget = (budget_secs > 0.0).then(|| Duration::from_secs_f64(budget_secs.min(1e9)));
        match inst.file.to_cmis().and_then(|c| exact_cmis(&c, budget)) {
            Ok(r) => {
                *proven = r.proven_optimal;
                write_set(&r.best, buf, cap, len)
            }
            Err(e) => from_error(e),
        }
    })
}

/// Solves the instance. With `oracle` the exhaustive search runs on the
/// original graph; otherwise the reduction over `w` is used, or over a set
/// found by random restarts when `w` is null. `*plan` receives a handle
/// for feasible verdicts and null otherwise.
///
/// # Safety
/// `inst` must be a live handle, `w` null or pointing to `w_len` values,
/// `verdict` and `plan` writable.
#[no_mangle]
pub unsafe extern "C" fn cmapf_solve(
    inst: *const CmapfInstance,
    w: *const usize,
    w_len: usize,
    oracle: bool,
    verdict: *mut CmapfVerdict,
    plan: *mut *mut CmapfPlan,
) -> CmapfStatus {
    guard(|| {
        let (Some(inst), false, false) = (inst.as_ref(), verdict.is_null(), plan.is_null()) else {
            return fail(CmapfStatus::NullPointer, "null argument");
        };
        *plan = ptr::null_mut();
        let w = if w.is_null() {
            None
        } else {
            match vertex_set(w, w_len) {
                Ok(w) => Some(w),
                Err(s) => return s,
            }
        };
        let result = inst.file.to_cmapf().and_then(|p| {
            if oracle {
                oracle_cmapf(&p, DEFAULT_ORACLE_STATE_CAP)
            } else {
                solve_cmapf(&p, w.as_ref(), &SolveOptions::default())
            }
        });
        match result {
            Ok(v) => {
                *verdict = match v {
                    Verdict::Feasible(p) => {
                        *plan = Box::into_raw(Box::new(CmapfPlan { plan: p }));
                        CmapfVerdict::Feasible
                    }
                    Verdict::InfeasibleViaReduction => CmapfVerdict::InfeasibleViaReduction,
                    Verdict::ProvenInfeasible => CmapfVerdict::ProvenInfeasible,
                };
                CmapfStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Builds a plan from `len` moves given as parallel `from` / `to` arrays.
///
/// # Safety
/// `from` and `to` must point to `len` values each; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cmapf_plan_new(
    from: *const usize,
    to: *const usize,
    len: usize,
    out: *mut *mut CmapfPlan,
) -> CmapfStatus {
    guard(|| {
        if out.is_null() || (len > 0 && (from.is_null() || to.is_null())) {
            return fail(CmapfStatus::NullPointer, "null argument");
        }
        let pairs = (0..len).map(|i| (*from.add(i), *to.add(i)));
        *out = Box::into_raw(Box::new(CmapfPlan {
            plan: Plan::from_pairs(pairs),
        }));
        CmapfStatus::Ok
    })
}

/// Number of moves, or 0 for a null handle.
///
/// # Safety
/// `plan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cmapf_plan_len(plan: *const CmapfPlan) -> usize {
    plan.as_ref().map_or(0, |p| p.plan.len())
}

/// Reads move `index`.
///
/// # Safety
/// `plan` must be a live handle; `from` and `to` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cmapf_plan_move(
    plan: *const CmapfPlan,
    index: usize,
    from: *mut usize,
    to: *mut usize,
) -> CmapfStatus {
    guard(|| {
        let (Some(plan), false, false) = (plan.as_ref(), from.is_null(), to.is_null()) else {
            return fail(CmapfStatus::NullPointer, "null argument");
        };
        match plan.plan.moves().get(index) {
            Some(m) => {
                *from = m.from;
                *to = m.to;
                CmapfStatus::Ok
            }
            None => fail(CmapfStatus::InvalidArgument, format!("move index {index} out of range")),
        }
    })
}

/// # Safety
/// `plan` must be null or a live handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cmapf_plan_free(plan: *mut CmapfPlan) {
    if !plan.is_null() {
        drop(Box::from_raw(plan));
    }
}

/// Replays `plan` from the instance source with constraint checking.
/// Returns `CMAPF_STATUS_INVALID_PLAN` with a diagnostic when it fails.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn cmapf_validate(inst: *const CmapfInstance, plan: *const CmapfPlan) -> CmapfStatus {
    guard(|| {
        let (Some(inst), Some(plan)) = (inst.as_ref(), plan.as_ref()) else {
            return fail(CmapfStatus::NullPointer, "null argument");
        };
        match inst.file.to_cmapf().and_then(|p| validate_plan(&p, &plan.plan)) {
            Ok(_) => CmapfStatus::Ok,
            Err(e) => from_error(e),
        }
    })
}
