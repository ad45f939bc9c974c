#include "hyperfactor/sweep.hpp"

#include <atomic>
#include <chrono>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "hyperfactor/verify.hpp"

namespace hyperfactor {

PartitionEnumerator::PartitionEnumerator(Count total, Count step, std::size_t max_parts)
    : total_(total), step_(step), max_parts_(max_parts) {
  if (step_ == 0) throw std::invalid_argument("partition step must be positive");
  done_ = total_ == 0 || total_ % step_ != 0 || max_parts_ == 0;
}

bool PartitionEnumerator::advance() {
  // Pop trailing parts into `rest` until some part can drop by one and the
  // remainder still fits in the free slots using parts no larger than it.
  Count rest = 0;
  while (!parts_.empty()) {
    const Count p = parts_.back();
    parts_.pop_back();
    if (p > 1) {
      const Count smaller = p - 1;
      const Count remainder = rest + 1;
      const std::size_t free = max_parts_ - parts_.size() - 1;
      if ((remainder + smaller - 1) / smaller <= free) {
        parts_.push_back(smaller);
        for (Count left = remainder; left > 0; left -= std::min(left, smaller))
          parts_.push_back(std::min(left, smaller));
        return true;
      }
    }
    rest += p;
  }
  return false;
}

bool PartitionEnumerator::next(std::vector<Count>& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    parts_.assign(1, total_ / step_);
  } else if (!advance()) {
    done_ = true;
    return false;
  }
  out.resize(parts_.size());
  for (std::size_t i = 0; i < parts_.size(); ++i) out[i] = parts_[i] * step_;
  return true;
}

Count count_partitions(Count total, Count step, std::size_t max_parts) {
  if (step == 0 || total == 0 || total % step != 0 || max_parts == 0) return 0;
  // Partitions into at most k parts are equinumerous with partitions whose
  // parts are at most k (transpose the Ferrers diagram).
  const Count units = total / step;
  const Count largest = std::min<Count>(max_parts, units);
  std::vector<Count> ways(units + 1, 0);
  ways[0] = 1;
  for (Count part = 1; part <= largest; ++part)
    for (Count s = part; s <= units; ++s) {
      const Count sum = ways[s] + ways[s - part];
      ways[s] = sum < ways[s] ? std::numeric_limits<Count>::max() : sum;
    }
  return ways[units];
}

Count class_degree_step(Count n, Count m) { return 3 / std::gcd<Count>(3, n * m); }

bool SweepResult::passed() const {
  for (const auto& c : cells)
    if (c.failed > 0) return false;
  return step_checks.passed();
}

bool SweepResult::complete() const {
  for (const auto& c : cells)
    if (!c.complete()) return false;
  return true;
}

Count SweepResult::instances() const {
  Count n = 0;
  for (const auto& c : cells) n += c.built;
  return n;
}

std::string SweepResult::to_table() const {
  std::ostringstream os;
  os << std::setw(7) << "lambda" << std::setw(4) << "n" << std::setw(4) << "m" << std::setw(12) << "feasible"
     << std::setw(12) << "built" << std::setw(12) << "passed" << std::setw(8) << "failed" << std::setw(10)
     << "seconds" << "\n";
  for (const auto& c : cells) {
    os << std::setw(7) << c.lambda << std::setw(4) << c.n << std::setw(4) << (c.m ? std::to_string(c.m) : "-")
       << std::setw(12) << c.expected << std::setw(12) << c.built << std::setw(12) << c.passed << std::setw(8)
       << c.failed << std::setw(10) << std::fixed << std::setprecision(2) << c.seconds
       << (c.complete() ? "" : "  incomplete") << "\n";
    for (const auto& f : c.failures) os << "  FAIL " << f << "\n";
  }
  os << "total " << instances() << " instances in " << std::fixed << std::setprecision(2) << seconds << " s"
     << (complete() ? "" : " (incomplete)") << (passed() ? ", all passed" : ", FAILURES") << "\n";
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kBatch = 64;
constexpr std::size_t kKeptFailures = 5;

struct CellRun {
  const SweepOptions& options;
  SweepCell& cell;
  VerificationReport& step_checks;
  PartitionEnumerator partitions;
  Clock::time_point deadline;
  bool has_deadline;
  std::mutex mutex;
  std::atomic<bool> stop{false};

  // Takes up to kBatch partitions; empty when exhausted, over budget or at
  // the cell limit.
  std::vector<std::vector<Count>> take() {
    std::vector<std::vector<Count>> batch;
    std::lock_guard lock(mutex);
    if (stop || (has_deadline && Clock::now() >= deadline)) {
      stop = true;
      return batch;
    }
    std::vector<Count> r;
    while (batch.size() < kBatch && issued() && partitions.next(r)) {
      batch.push_back(r);
      ++handed_out;
    }
    return batch;
  }

  bool issued() const { return options.cell_limit == 0 || handed_out < options.cell_limit; }

  void run_one(const std::vector<Count>& r, SweepCell& local, VerificationReport& local_checks) {
    FactorizationSpec spec = cell.m ? FactorizationSpec::multipartite(cell.lambda, cell.n, cell.m, r)
                                    : FactorizationSpec::complete(cell.lambda, cell.n, r);
    ++local.built;
    try {
      const Factorization fz = factorize(spec, options.detach);
      const VerificationReport report = verify_factorization(fz);
      local.steps += fz.steps;
      if (options.detach.step_checks) local_checks.merge(fz.step_checks);
      if (options.on_instance) options.on_instance(fz, report);
      const bool ok = report.passed() && fz.step_checks.passed();
      ++(ok ? local.passed : local.failed);
      if (!ok && local.failures.size() < kKeptFailures)
        local.failures.push_back(spec.to_string() + ": " + report.to_table());
    } catch (const std::exception& e) {
      ++local.failed;
      if (local.failures.size() < kKeptFailures) local.failures.push_back(spec.to_string() + ": " + e.what());
    }
  }

  void worker() {
    SweepCell local;
    VerificationReport local_checks;
    for (auto batch = take(); !batch.empty(); batch = take())
      for (const auto& r : batch) run_one(r, local, local_checks);
    std::lock_guard lock(mutex);
    cell.built += local.built;
    cell.passed += local.passed;
    cell.failed += local.failed;
    cell.steps += local.steps;
    for (auto& f : local.failures)
      if (cell.failures.size() < kKeptFailures) cell.failures.push_back(std::move(f));
    step_checks.merge(local_checks);
  }

  std::size_t handed_out = 0;
};

}  // namespace

SweepResult run_sweep(const SweepOptions& options) {
  SweepResult result;
  const auto start = Clock::now();
  const bool has_deadline = options.time_budget > 0;
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(options.time_budget));
  const unsigned threads = std::max(1u, options.threads);

  std::vector<Count> ms;
  if (options.multipartite)
    for (Count m = options.min_m; m <= options.max_m; ++m) ms.push_back(m);
  else
    ms.push_back(0);

  for (Count lambda = options.min_lambda; lambda <= options.max_lambda; ++lambda) {
    for (Count n = std::max<Count>(3, options.min_n); n <= options.max_n; ++n) {
      for (Count m : ms) {
        SweepCell cell;
        cell.lambda = lambda;
        cell.n = n;
        cell.m = m;
        const Count part = m ? m : 1;
        const Count total = lambda * binomial(n - 1, 2) * part * part;
        const Count step = class_degree_step(n, part);
        cell.expected = count_partitions(total, step, options.max_k);

        const auto cell_start = Clock::now();
        CellRun run{options, cell, result.step_checks, PartitionEnumerator(total, step, options.max_k),
                    deadline, has_deadline};
        if (threads == 1) {
          run.worker();
        } else {
          std::vector<std::thread> pool;
          for (unsigned t = 0; t < threads; ++t) pool.emplace_back([&run] { run.worker(); });
          for (auto& t : pool) t.join();
        }
        cell.seconds = std::chrono::duration<double>(Clock::now() - cell_start).count();
        result.cells.push_back(std::move(cell));
      }
    }
  }
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace hyperfactor
