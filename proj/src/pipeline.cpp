#include "qctl/pipeline.hpp"

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "qctl/emit.hpp"
#include "qctl/errors.hpp"
#include "qctl/external_solver.hpp"
#include "qctl/prenex.hpp"

namespace qctl {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Holds: return 0;
    case Verdict::Fails: return 1;
    case Verdict::Unknown: return 2;
  }
  return 2;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("cannot write '" + path + "'");
}

std::string render(EmitFormat fmt, const Qbf& q) {
  return fmt == EmitFormat::Qdimacs ? emit_qdimacs(to_prenex_cnf(q)) : emit_smtlib(q);
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& suffix) {
    std::string tmpl = "/tmp/qctlmc_XXXXXX" + suffix;
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    int fd = mkstemps(buf.data(), static_cast<int>(suffix.size()));
    if (fd < 0) throw Error("cannot create a temporary file");
    close(fd);
    path = buf.data();
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

RunReport run_check(const CheckConfig& c) {
  RunReport r;
  r.strategy = c.strategy;
  r.bound = c.bound;

  auto t0 = std::chrono::steady_clock::now();
  ReductionJob job{c.structure, c.initial, c.formula, c.strategy, c.bound, c.exists1};
  Qbf q = simplify(reduce(job));
  r.build_time = seconds_since(t0);
  r.qbf_size = dag_size(q);
  r.qbf_vars = quantified_var_count(q);

  std::string script;
  if (c.emit != EmitFormat::None) {
    script = render(c.emit, q);
    write_file(c.emit_path, script);
    r.script_bytes = script.size();
  }

  bool valid = false;
  bool decided = true;
  auto t1 = std::chrono::steady_clock::now();
  if (c.solver == "internal") {
    r.solver = "internal";
    valid = check_validity(q, c.solver_options);
  } else if (c.solver.rfind("exec:", 0) == 0) {
    std::string cmd = c.solver.substr(5);
    r.solver = "external(" + cmd + ")";
    EmitFormat fmt = c.emit == EmitFormat::Qdimacs ? EmitFormat::Qdimacs : EmitFormat::Smt2;
    std::string path = c.emit_path;
    std::optional<TempFile> tmp;
    if (c.emit == EmitFormat::None) {
      tmp.emplace(".smt2");
      path = tmp->path;
      script = render(fmt, q);
      write_file(path, script);
      r.script_bytes = script.size();
    }
    ExternalResult er = invoke_external_solver(cmd, path, c.timeout_seconds);
    if (er.answer == SolverAnswer::Unknown) decided = false;
    valid = er.answer == SolverAnswer::Sat;
  } else {
    throw ValidationError("solver must be 'internal' or 'exec:<command>'");
  }
  r.solve_time = seconds_since(t1);

  if (!decided) r.verdict = Verdict::Unknown;
  else if (valid) r.verdict = Verdict::Holds;
  else if (c.strategy == Strategy::X && c.bound && *c.bound + 1 < c.structure.num_vertices()) r.verdict = Verdict::Unknown;
  else r.verdict = Verdict::Fails;
  return r;
}

std::string format_report(const RunReport& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << "verdict: " << verdict_name(r.verdict) << '\n';
  os << "strategy: " << strategy_name(r.strategy) << '\n';
  if (r.bound) os << "bound: " << *r.bound << '\n';
  os << "build_time: " << r.build_time << '\n';
  os << "qbf_size: " << r.qbf_size << '\n';
  os << "qbf_vars: " << r.qbf_vars << '\n';
  if (r.script_bytes) os << "script_bytes: " << r.script_bytes << '\n';
  os << "solve_time: " << r.solve_time << '\n';
  os << "solver: " << r.solver << '\n';
  return os.str();
}

std::vector<BatchResult> run_batch(const std::vector<CheckConfig>& configs, unsigned workers) {
  std::vector<BatchResult> out(configs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < configs.size();) {
      try {
        out[i].report = run_check(configs[i]);
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(configs.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace qctl
