#include "invpso/recommender.hpp"

#include <charconv>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "invpso/error.hpp"

namespace invpso {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string shortest(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

Direction parse_direction(std::string_view text) {
  if (text == "increase") return Direction::Increase;
  if (text == "decrease") return Direction::Decrease;
  if (text == "none") return Direction::None;
  throw Error(ErrorCode::Parse, "unknown direction '" + std::string(text) + "'");
}

}  // namespace

std::string_view to_string(Direction direction) noexcept {
  switch (direction) {
    case Direction::Increase: return "increase";
    case Direction::Decrease: return "decrease";
    case Direction::None: return "none";
  }
  return "none";
}

std::vector<std::string> member_labels(const Topology& topology) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(topology.member_count()));
  labels.emplace_back("factory");
  for (std::int64_t dc = 1; dc <= topology.dc_count(); ++dc) {
    labels.push_back("distribution centre " + std::to_string(dc));
  }
  const std::int64_t agents = total_agents(topology.agents_per_dc());
  for (std::int64_t agent = 1; agent <= agents; ++agent) labels.push_back("agent " + std::to_string(agent));
  return labels;
}

Recommendation interpret(std::span<const double> best_position, const Topology& topology) {
  const auto expected = static_cast<std::size_t>(dimension(topology));
  if (best_position.size() != expected) {
    throw Error(ErrorCode::DimensionMismatch, "best position has " + std::to_string(best_position.size()) +
                                                  " dimensions, expected " + std::to_string(expected));
  }
  const std::vector<std::string> labels = member_labels(topology);

  Recommendation rec;
  rec.product_id = static_cast<ProductId>(std::round(best_position[0]));
  rec.actions.reserve(labels.size());
  for (std::size_t m = 0; m < labels.size(); ++m) {
    const auto level = static_cast<std::int64_t>(std::round(best_position[m + 1]));
    Action action{static_cast<std::int64_t>(m), labels[m], Direction::None, 0};
    if (level < 0) {
      action.direction = Direction::Increase;  // predicted shortage
      action.quantity = -level;
    } else if (level > 0) {
      action.direction = Direction::Decrease;  // predicted excess
      action.quantity = level;
    }
    rec.actions.push_back(std::move(action));
  }
  return rec;
}

std::string render_report(const Recommendation& rec, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json doc;
    doc["product_id"] = rec.product_id;
    doc["fitness"] = rec.fitness;
    doc["weights"] = {rec.weights.w1, rec.weights.w2, rec.weights.w3};
    doc["iterations"] = rec.iterations;
    ordered_json actions = ordered_json::array();
    for (const Action& a : rec.actions) {
      ordered_json entry;
      entry["member"] = a.member_label;
      entry["direction"] = std::string(to_string(a.direction));
      entry["quantity"] = a.quantity;
      actions.push_back(std::move(entry));
    }
    doc["actions"] = std::move(actions);
    return doc.dump(2) + "\n";
  }

  std::ostringstream out;
  const std::string product = "product " + std::to_string(rec.product_id);
  for (const Action& a : rec.actions) {
    out << a.member_label << ": ";
    switch (a.direction) {
      case Direction::Increase:
        out << "increase " << product << " by " << a.quantity << " units (predicted shortage)\n";
        break;
      case Direction::Decrease:
        out << "decrease " << product << " by " << a.quantity << " units (predicted excess)\n";
        break;
      case Direction::None:
        out << "no change for " << product << "\n";
        break;
    }
  }
  out << "fitness: " << shortest(rec.fitness) << "\n";
  out << "weights: " << shortest(rec.weights.w1) << ", " << shortest(rec.weights.w2) << ", "
      << shortest(rec.weights.w3) << "\n";
  out << "iterations: " << rec.iterations << "\n";
  return out.str();
}

Recommendation parse_report_json(std::string_view json) {
  try {
    const ordered_json doc = ordered_json::parse(json);
    Recommendation rec;
    rec.product_id = doc.at("product_id").get<ProductId>();
    rec.fitness = doc.at("fitness").get<double>();
    const auto& w = doc.at("weights");
    if (!w.is_array() || w.size() != 3) throw Error(ErrorCode::Parse, "weights must be a 3-element array");
    rec.weights = {w[0].get<double>(), w[1].get<double>(), w[2].get<double>()};
    rec.iterations = doc.at("iterations").get<std::int64_t>();
    std::int64_t index = 0;
    for (const auto& entry : doc.at("actions")) {
      Action a;
      a.member_index = index++;
      a.member_label = entry.at("member").get<std::string>();
      a.direction = parse_direction(entry.at("direction").get<std::string>());
      a.quantity = entry.at("quantity").get<std::int64_t>();
      if ((a.direction == Direction::None) != (a.quantity == 0) || a.quantity < 0) {
        throw Error(ErrorCode::Parse, "action for '" + a.member_label + "' has inconsistent direction/quantity");
      }
      rec.actions.push_back(std::move(a));
    }
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("report JSON: ") + e.what());
  }
}

}  // namespace invpso
