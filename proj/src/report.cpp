#include "harsanyi/report.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <sstream>

#include <json.hpp>

#include "harsanyi/error.hpp"

namespace harsanyi::report {

using nlohmann::ordered_json;

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::kCsv;
  if (name == "jsonl" || name == "json-lines") return Format::kJsonl;
  throw InvalidArgument("unknown output format '" + std::string(name) + "'");
}

std::string_view extension(Format f) { return f == Format::kCsv ? ".csv" : ".jsonl"; }

std::string format_real(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

namespace {

// Collects rows with a fixed column order and renders either format.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<ordered_json> row) { rows_.push_back(std::move(row)); }

  std::string render(Format format) const {
    std::ostringstream os;
    if (format == Format::kCsv) {
      for (std::size_t c = 0; c < columns_.size(); ++c) os << (c ? "," : "") << columns_[c];
      os << '\n';
      for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << cell(row[c]);
        os << '\n';
      }
    } else {
      for (const auto& row : rows_) {
        ordered_json obj = ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[columns_[c]] = row[c];
        os << obj.dump() << '\n';
      }
    }
    return os.str();
  }

 private:
  static std::string cell(const ordered_json& v) {
    if (v.is_null()) return "";
    if (v.is_number_float()) return format_real(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<ordered_json>> rows_;
};

ordered_json optional_real(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

std::string order_decomposition_report(const OrderDecomposition& od, const RatioSummary* ratio,
                                       Format format) {
  std::vector<std::string> columns{"order", "pretrain", "finetune", "preserve", "discard", "new"};
  if (ratio) {
    columns.push_back("ratio");
    columns.push_back("ratio_defined");
  }
  Table table(columns);
  for (int i = 0; i <= od.n; ++i) {
    std::vector<ordered_json> row{i, od.pretrain[i], od.finetune[i], od.preserve[i], od.discard[i], od.new_[i]};
    if (ratio) {
      row.push_back(optional_real(ratio->per_order[i]));
      row.push_back(ratio->defined_per_order[i]);
    }
    table.add(std::move(row));
  }
  return table.render(format);
}

std::string ratio_summary_report(const RatioSummary& ratio, Format format) {
  Table table({"ratio", "defined_subsets", "excluded_subsets", "samples"});
  table.add({optional_real(ratio.aggregate), ratio.defined_count, ratio.excluded_count, ratio.samples});
  return table.render(format);
}

std::string subset_dump(std::span<const SubsetDumpRow> rows, Format format) {
  const bool with_rand = !rows.empty() && rows.front().rand != nullptr;
  std::vector<std::string> columns{"sample", "mask",     "order",   "pretrain",
                                   "finetune", "preserve", "discard", "new"};
  if (with_rand) {
    columns.push_back("random");
    columns.push_back("ratio");
  }
  Table table(columns);
  for (const SubsetDumpRow& r : rows) {
    for (std::size_t m = 0; m < r.pre->size(); ++m) {
      std::vector<ordered_json> row{r.sample,
                                    m,
                                    std::popcount(m),
                                    (*r.pre)[m],
                                    (*r.fine)[m],
                                    r.decomposition->preserve[m],
                                    r.decomposition->discard[m],
                                    r.decomposition->new_[m]};
      if (with_rand) {
        row.push_back((*r.rand)[m]);
        row.push_back(r.ratio ? optional_real(r.ratio->per_subset[m]) : ordered_json(nullptr));
      }
      table.add(std::move(row));
    }
  }
  return table.render(format);
}

std::string sparsity_table(std::span<const NamedSparsity> rows, Format format) {
  Table table({"sample", "salient_count", "total_count", "tau", "residual_max", "output_max"});
  for (const NamedSparsity& r : rows) {
    table.add({r.sample, r.report.salient_count, r.report.total_count, r.report.tau,
               r.report.residual_max, r.report.output_max});
  }
  return table.render(format);
}

std::string trajectory_report(std::span<const TrajectoryRecord> records, Format format) {
  Table table({"variant", "epoch", "jaccard", "samples_n"});
  for (const TrajectoryRecord& r : records) {
    table.add({std::string(variant_name(r.variant)), r.epoch, r.similarity, r.samples});
  }
  return table.render(format);
}

std::string trajectory_svg(std::span<const TrajectoryRecord> records) {
  constexpr double kWidth = 640, kHeight = 400, kLeft = 60, kRight = 20, kTop = 20, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  std::map<std::string, std::vector<const TrajectoryRecord*>> series;
  int max_epoch = 1;
  for (const TrajectoryRecord& r : records) {
    series[std::string(variant_name(r.variant))].push_back(&r);
    max_epoch = std::max(max_epoch, r.epoch);
  }
  auto x_of = [&](int epoch) {
    return kLeft + (max_epoch == 1 ? 0.0 : plot_w * (epoch - 1) / (max_epoch - 1));
  };
  auto y_of = [&](double sim) { return kTop + plot_h * (1.0 - std::clamp(sim, 0.0, 1.0)); };
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<g stroke=\"black\" stroke-width=\"1\">\n"
     << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
     << "\" y2=\"" << kTop + plot_h << "\"/>\n"
     << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
     << kTop + plot_h << "\"/>\n"
     << "</g>\n"
     << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (double tick : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(y_of(tick) + 4)
       << "\" text-anchor=\"end\">" << tick << "</text>\n";
  }
  os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\">epoch (1.." << max_epoch << ")</text>\n"
     << "<text x=\"16\" y=\"" << kTop + plot_h / 2 << "\" transform=\"rotate(-90 16 "
     << kTop + plot_h / 2 << ")\" text-anchor=\"middle\">Jaccard to final</text>\n"
     << "</g>\n";

  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  int k = 0;
  for (const auto& [name, points] : series) {
    const char* color = colors[k % 4];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" data-variant=\""
       << name << "\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
      os << (i ? " " : "") << num(x_of(points[i]->epoch)) << ',' << num(y_of(points[i]->similarity));
    }
    os << "\"/>\n";
    os << "<text x=\"" << kLeft + plot_w - 100 << "\" y=\"" << kTop + plot_h - 20 - 16 * k
       << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">" << name
       << "</text>\n";
    ++k;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace harsanyi::report
