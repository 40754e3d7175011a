#include "vcsim/harness/bench.hpp"

#include <cmath>

#include "vcsim/extract/worker.hpp"
#include "vcsim/netsim/simulator.hpp"
#include "vcsim/synth/render.hpp"
#include "vcsim/synth/trace.hpp"

namespace vcsim::harness {

namespace {

BenchRow row(std::string name, double measured, double reference) {
    return BenchRow{std::move(name), measured, reference, std::abs(measured - reference) / reference};
}

// A message whose wire size is exactly `bytes`.
netsim::Message payload_of(std::size_t bytes) {
    return netsim::Message{netsim::MessageType::Control,
                           std::vector<std::uint8_t>(bytes - netsim::kFramingBytes, 0x5a)};
}

double send_once(netsim::LinkParams link, std::string src, std::string dst) {
    link.src = std::move(src);
    link.dst = std::move(dst);
    link.link_id = link.src + "->" + link.dst;
    netsim::Simulator sim(netsim::ClockMode::Virtual, 0);
    sim.add_node(link.src, [](const netsim::SimEvent&) {});
    netsim::SimTime delivered{0};
    sim.add_node(link.dst, [&](const netsim::SimEvent& ev) { delivered = ev.due; });
    sim.add_link(link);
    sim.schedule_send(link.link_id, payload_of(netsim::kTable1PayloadBytes));
    sim.run_all();
    return netsim::to_seconds(delivered);
}

} // namespace

std::vector<BenchRow> bench_table1() {
    const auto cal = netsim::calibrate_table1();
    std::vector<BenchRow> rows;
    rows.push_back(row("vehicle_to_rsu", send_once(cal.vehicle_rsu, "vehicle", "rsu"), netsim::kTable1VehicleToRsuS));
    rows.push_back(row("rsu_to_cloud", send_once(cal.rsu_cloud, "rsu", "worker"), netsim::kTable1RsuToCloudS));

    synth::SceneSpec scene;
    scene.items.push_back({*PlateCode::parse("AB123CD"), 4, 4, 1});
    const auto frame = synth::compose_frame(scene, GpsFix::from_degrees(45.0, 4.0, 0), 1, 279, 59, 0.0, 0);
    extract::WorkerNode worker("bench", extract::ModeledTimes{netsim::kTable1FaceS, netsim::kTable1PlateS,
                                                               netsim::kDefaultGpsStageS});
    const auto plan = worker.process(frame);
    rows.push_back(row("face_extraction", plan.stages[0].offset_s, netsim::kTable1FaceS));
    rows.push_back(row("plate_extraction", plan.stages[1].offset_s, netsim::kTable1PlateS));
    return rows;
}

nlohmann::json to_json(const std::vector<BenchRow>& rows) {
    auto out = nlohmann::json::array();
    for (const auto& r : rows) {
        out.push_back({{"name", r.name}, {"measured_s", r.measured_s}, {"reference_s", r.reference_s}, {"rel_error", r.rel_error}});
    }
    return out;
}

} // namespace vcsim::harness
