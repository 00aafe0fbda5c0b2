#include "asdlab/asdlab.h"

#include <new>
#include <string>

#include "asdlab/commands.hpp"
#include "asdlab/error.hpp"

struct asdlab_session {
  asdlab::CommandOptions opts;
  std::string report;
  std::string error;
};

namespace {

int fail(asdlab_session* s, int status, const std::string& msg) {
  s->error = msg;
  return status;
}

// Runs f, turning escaping exceptions into status codes.
template <class F>
int guarded(asdlab_session* s, F&& f) {
  if (!s) return ASDLAB_CONFIG_ERROR;
  s->error.clear();
  try {
    return f();
  } catch (const asdlab::Error& e) {
    return fail(s, asdlab::exit_code_for(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(s, ASDLAB_INTERNAL, std::string("internal error: ") + e.what());
  } catch (...) {
    return fail(s, ASDLAB_INTERNAL, "internal error");
  }
}

}  // namespace

extern "C" {

const char* asdlab_version(void) { return "0.1.0"; }

const char* asdlab_status_name(int status) {
  switch (status) {
    case ASDLAB_OK: return "ok";
    case ASDLAB_VERIFY_FAILED: return "verification failure";
    case ASDLAB_CONFIG_ERROR: return "config error";
    case ASDLAB_DEGENERATE: return "degenerate data";
    case ASDLAB_REALITY: return "reality or classification error";
    case ASDLAB_CONTOUR: return "contour error";
    case ASDLAB_INTERNAL: return "internal error";
  }
  return "unknown";
}

asdlab_session* asdlab_session_create(void) { return new (std::nothrow) asdlab_session(); }

void asdlab_session_destroy(asdlab_session* s) { delete s; }

int asdlab_session_load_config(asdlab_session* s, const char* path) {
  return guarded(s, [&] {
    if (!path) return fail(s, ASDLAB_CONFIG_ERROR, "null config path");
    s->opts.config = asdlab::read_json_file(path);
    return int(ASDLAB_OK);
  });
}

int asdlab_session_set_config(asdlab_session* s, const char* json_text) {
  return guarded(s, [&] {
    if (!json_text) return fail(s, ASDLAB_CONFIG_ERROR, "null config text");
    try {
      s->opts.config = asdlab::json::parse(json_text);
    } catch (const asdlab::json::parse_error& e) {
      return fail(s, ASDLAB_CONFIG_ERROR, std::string("ConfigError: ") + e.what());
    }
    return int(ASDLAB_OK);
  });
}

int asdlab_session_set_output_dir(asdlab_session* s, const char* dir) {
  return guarded(s, [&] {
    if (!dir || !*dir) return fail(s, ASDLAB_CONFIG_ERROR, "empty output directory");
    s->opts.out_dir = dir;
    return int(ASDLAB_OK);
  });
}

int asdlab_session_set_seed(asdlab_session* s, uint64_t seed) {
  return guarded(s, [&] {
    s->opts.seed = seed;
    return int(ASDLAB_OK);
  });
}

int asdlab_session_set_tolerance(asdlab_session* s, double rel_tol) {
  return guarded(s, [&] {
    if (!(rel_tol > 0) || !(rel_tol < 1)) return fail(s, ASDLAB_CONFIG_ERROR, "tolerance must be in (0, 1)");
    s->opts.tol = rel_tol;
    return int(ASDLAB_OK);
  });
}

int asdlab_session_run(asdlab_session* s, const char* command) {
  return guarded(s, [&] {
    s->report.clear();
    if (!command) return fail(s, ASDLAB_CONFIG_ERROR, "null command");
    const asdlab::CommandResult r = asdlab::run_command(command, s->opts);
    if (r.exit_code != ASDLAB_OK && r.exit_code != ASDLAB_VERIFY_FAILED) return fail(s, r.exit_code, r.error);
    s->report = asdlab::dump(r.report);
    return r.exit_code;
  });
}

const char* asdlab_session_report(const asdlab_session* s) { return s ? s->report.c_str() : ""; }

const char* asdlab_session_last_error(const asdlab_session* s) { return s ? s->error.c_str() : ""; }

}  // extern "C"
