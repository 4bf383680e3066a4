#include "toda/toda.h"

#include <string>

#include "errors.hpp"
#include "lab.hpp"

struct toda_lab {
  toda::Lab lab;
};

struct toda_doc {
  std::string json_text;
  std::string csv_text;
  bool has_csv = false;
};

namespace {

thread_local std::string g_last_error;

toda_status fail(toda_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

toda_status from_status(toda::Status s) {
  return static_cast<toda_status>(static_cast<int>(s));
}

// Runs fn(), which must return a filled toda_doc, and owns the
// exception-to-status mapping in one place.
template <typename Fn>
toda_status guarded(toda_doc** out, Fn&& fn) {
  if (!out) return fail(TODA_CONFIG_ERROR, "output pointer is null");
  *out = nullptr;
  try {
    *out = fn();
    g_last_error.clear();
    return TODA_OK;
  } catch (const toda::Error& e) {
    return fail(from_status(e.status()), e.what());
  } catch (const std::exception& e) {
    return fail(TODA_NUMERICAL_ERROR, e.what());
  }
}

toda_doc* doc_from_json(const nlohmann::json& j) {
  auto* doc = new toda_doc;
  doc->json_text = j.dump(2);
  doc->json_text.push_back('\n');
  return doc;
}

}  // namespace

extern "C" {

const char* toda_version(void) { return "1.0.0"; }

const char* toda_last_error(void) { return g_last_error.c_str(); }

toda_status toda_lab_create(const char* config_json, toda_lab** out) {
  if (!out) return fail(TODA_CONFIG_ERROR, "output pointer is null");
  *out = nullptr;
  try {
    nlohmann::json j = config_json && config_json[0]
                           ? nlohmann::json::parse(config_json)
                           : nlohmann::json::object();
    auto* handle = new toda_lab{toda::build_lab(toda::config_from_json(j))};
    *out = handle;
    g_last_error.clear();
    return TODA_OK;
  } catch (const nlohmann::json::parse_error& e) {
    return fail(TODA_CONFIG_ERROR, std::string("config is not JSON: ") + e.what());
  } catch (const toda::Error& e) {
    return fail(from_status(e.status()), e.what());
  } catch (const std::exception& e) {
    return fail(TODA_NUMERICAL_ERROR, e.what());
  }
}

void toda_lab_destroy(toda_lab* lab) { delete lab; }

toda_status toda_lab_roots(toda_lab* lab, toda_doc** out) {
  if (!lab) return fail(TODA_CONFIG_ERROR, "lab handle is null");
  return guarded(out, [&] { return doc_from_json(toda::roots_doc(lab->lab)); });
}

toda_status toda_lab_weyl(toda_lab* lab, toda_doc** out) {
  if (!lab) return fail(TODA_CONFIG_ERROR, "lab handle is null");
  return guarded(out, [&] { return doc_from_json(toda::weyl_doc(lab->lab)); });
}

toda_status toda_lab_bruhat(toda_lab* lab, const char* kind, toda_doc** out) {
  if (!lab) return fail(TODA_CONFIG_ERROR, "lab handle is null");
  return guarded(out, [&] {
    toda::OrderKind k = kind && kind[0] ? toda::order_kind_from_name(kind)
                                        : lab->lab.cfg.order;
    return doc_from_json(toda::bruhat_doc(lab->lab, k));
  });
}

toda_status toda_lab_flow(toda_lab* lab, const char* kind, toda_doc** out) {
  if (!lab) return fail(TODA_CONFIG_ERROR, "lab handle is null");
  return guarded(out, [&] {
    toda::FlowRun run = toda::run_flow(lab->lab, kind ? kind : "lax");
    toda_doc* doc = doc_from_json(run.diag);
    doc->csv_text = std::move(run.csv);
    doc->has_csv = true;
    return doc;
  });
}

toda_status toda_lab_curve_check(toda_lab* lab, toda_doc** out) {
  if (!lab) return fail(TODA_CONFIG_ERROR, "lab handle is null");
  return guarded(out,
                 [&] { return doc_from_json(toda::curves_doc(lab->lab)); });
}

toda_status toda_lab_linearize(toda_lab* lab, toda_doc** out) {
  if (!lab) return fail(TODA_CONFIG_ERROR, "lab handle is null");
  return guarded(out,
                 [&] { return doc_from_json(toda::linearize_doc(lab->lab)); });
}

toda_status toda_lab_connectivity(toda_lab* lab, toda_doc** out) {
  if (!lab) return fail(TODA_CONFIG_ERROR, "lab handle is null");
  toda_status s = guarded(
      out, [&] { return doc_from_json(toda::connectivity_doc(lab->lab)); });
  if (s != TODA_OK) return s;
  const nlohmann::json j = nlohmann::json::parse((*out)->json_text);
  if (!j["reachability_matches_strong"].get<bool>() ||
      !j["all_covers_connected"].get<bool>() || !j["violations"].empty())
    return fail(TODA_INVARIANT_ERROR,
                "trajectory graph disagrees with the strong order");
  return TODA_OK;
}

toda_status toda_lab_verify(toda_lab* lab, toda_doc** out) {
  if (!lab) return fail(TODA_CONFIG_ERROR, "lab handle is null");
  toda_status s =
      guarded(out, [&] { return doc_from_json(toda::verify_doc(lab->lab)); });
  if (s != TODA_OK) return s;
  const nlohmann::json j = nlohmann::json::parse((*out)->json_text);
  if (!j["all_passed"].get<bool>())
    return fail(TODA_INVARIANT_ERROR, "verification battery failed");
  return TODA_OK;
}

const char* toda_doc_json(const toda_doc* doc) {
  return doc ? doc->json_text.c_str() : nullptr;
}

const char* toda_doc_csv(const toda_doc* doc) {
  return doc && doc->has_csv ? doc->csv_text.c_str() : nullptr;
}

void toda_doc_destroy(toda_doc* doc) { delete doc; }

}  // extern "C"
