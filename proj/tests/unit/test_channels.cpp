#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "qnetcap/channels.hpp"
#include "qnetcap/errors.hpp"
#include "qnetcap/oracles.hpp"

using namespace qnetcap;

namespace {

NodeSpec node(ChannelSpec recv, ChannelSpec send) { return {"n", recv, send}; }

}  // namespace

TEST(ComposeAd, Examples) {
    EXPECT_DOUBLE_EQ(compose_ad(std::vector<double>{0.3}), 0.3);
    EXPECT_EQ(compose_ad(std::vector<double>{0.0, 0.0}), 0.0);
    EXPECT_NEAR(compose_ad(std::vector<double>{0.1, 0.2, 0.3}), 0.496, 1e-15);
}

TEST(ComposeAd, MatchesKrausComposition) {
    const std::vector<double> probs{0.1, 0.2, 0.3};
    auto seq = oracles::QubitChannel::identity();
    for (double p : probs) seq = seq.then(oracles::QubitChannel::amplitude_damping(p));
    const auto direct = oracles::QubitChannel::amplitude_damping(compose_ad(probs));

    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int i = 0; i < 20; ++i) {
        Eigen::Vector2cd psi(std::complex<double>(g(rng), g(rng)), std::complex<double>(g(rng), g(rng)));
        psi.normalize();
        const oracles::Matrix2c rho = psi * psi.adjoint();
        EXPECT_LE((seq.apply(rho) - direct.apply(rho)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(ComposeAd, Errors) {
    EXPECT_THROW(compose_ad(std::vector<double>{}), EmptyCompound);
    EXPECT_THROW(compose_ad(std::vector<double>{1.2}), DomainError);
    EXPECT_THROW(compose_ad(std::vector<double>{-0.1}), DomainError);
}

TEST(ComposeTl, Examples) {
    const auto single = compose_tl(std::vector<ThermalLoss>{{0.5, 0.1}});
    EXPECT_DOUBLE_EQ(single.tau, 0.5);
    EXPECT_NEAR(single.nbar, 0.1, 1e-15);

    const auto pure = compose_tl(std::vector<ThermalLoss>{{0.5, 0.0}, {0.4, 0.0}});
    EXPECT_DOUBLE_EQ(pure.tau, 0.2);
    EXPECT_EQ(pure.nbar, 0.0);

    const auto two = compose_tl(std::vector<ThermalLoss>{{0.8, 0.1}, {0.5, 0.2}});
    EXPECT_DOUBLE_EQ(two.tau, 0.4);
    EXPECT_NEAR(two.nbar, 0.25, 1e-15);
    EXPECT_NEAR(two.nbar, 0.2 + 0.5 * 0.1, 1e-15);
}

TEST(ComposeTl, MatchesCovariancePropagation) {
    const std::vector<ThermalLoss> links{{0.8, 0.1}, {0.5, 0.2}};
    Eigen::Matrix2d v;
    v << 1.3, 0.2, 0.2, 0.7;
    const auto out = oracles::gaussian_propagate(oracles::CovarianceMatrix(v), links).matrix();
    const Eigen::Matrix2d expected = 0.4 * v + 0.55 * Eigen::Matrix2d::Identity();
    EXPECT_LE((out - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ComposeTl, Errors) {
    EXPECT_THROW(compose_tl(std::vector<ThermalLoss>{}), EmptyCompound);
    EXPECT_THROW(compose_tl(std::vector<ThermalLoss>{{0.0, 0.1}}), DomainError);
    EXPECT_THROW(compose_tl(std::vector<ThermalLoss>{{1.5, 0.1}}), DomainError);
    EXPECT_THROW(compose_tl(std::vector<ThermalLoss>{{0.5, -0.1}}), DomainError);
}

TEST(ComposeTl, Associative) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> tau(0.05, 1.0), nbar(0.0, 0.5);
    for (int i = 0; i < 200; ++i) {
        const ThermalLoss a{tau(rng), nbar(rng)}, b{tau(rng), nbar(rng)}, c{tau(rng), nbar(rng)};
        const auto ab = compose_tl(std::vector<ThermalLoss>{a, b});
        const auto bc = compose_tl(std::vector<ThermalLoss>{b, c});
        const auto left = compose_tl(std::vector<ThermalLoss>{ab, c});
        const auto right = compose_tl(std::vector<ThermalLoss>{a, bc});
        EXPECT_NEAR(left.tau, right.tau, 1e-15);
        EXPECT_NEAR(left.nbar, right.nbar, 1e-14);
    }
}

TEST(ComposeAd, AssociativeAndMonotone) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double a = u(rng), b = u(rng), c = u(rng);
        const double left = compose_ad(std::vector<double>{compose_ad(std::vector<double>{a, b}), c});
        const double right = compose_ad(std::vector<double>{a, compose_ad(std::vector<double>{b, c})});
        EXPECT_NEAR(left, right, 1e-15);
        EXPECT_GE(compose_ad(std::vector<double>{a, b}) + 1e-15, std::max(a, b));
    }
}

TEST(NodeSplitAd, Examples) {
    const auto ideal = node(ChannelSpec::identity(), ChannelSpec::identity());
    EXPECT_DOUBLE_EQ(node_split_ad(0.2, ideal, ideal), 0.2);

    const auto lossy = node(ChannelSpec::amplitude_damping(0.1), ChannelSpec::amplitude_damping(0.1));
    EXPECT_NEAR(node_split_ad(0.0, lossy, lossy), 0.19, 1e-15);

    // Internal efficiency 0.1 at 100 km.
    const double p_xy = FibreParams{0.02, 0.0, 100.0}.damping();
    EXPECT_NEAR(p_xy, 0.99, 1e-15);
    const auto sender = node(ChannelSpec::identity(), ChannelSpec::identity());
    const auto receiver = node(ChannelSpec::amplitude_damping(0.9), ChannelSpec::identity());
    EXPECT_NEAR(node_split_ad(p_xy, sender, receiver), 0.999, 1e-14);
}

TEST(NodeSplitTl, Examples) {
    const auto ideal = node(ChannelSpec::identity(), ChannelSpec::identity());
    const auto a = node_split_tl({0.5, 0.0}, ideal, ideal);
    EXPECT_DOUBLE_EQ(a.tau, 0.5);
    EXPECT_EQ(a.nbar, 0.0);

    const auto receiver = node(ChannelSpec::thermal_loss(0.8, 0.0), ChannelSpec::identity());
    const auto b = node_split_tl({0.8, 0.002}, ideal, receiver);
    EXPECT_NEAR(b.tau, 0.64, 1e-15);
    EXPECT_NEAR(b.nbar, 0.0016, 1e-15);

    const auto x = node(ChannelSpec::identity(), ChannelSpec::thermal_loss(0.95, 0.005));
    const auto y = node(ChannelSpec::thermal_loss(0.9, 0.01), ChannelSpec::identity());
    const auto c = node_split_tl({0.5, 0.002}, x, y);
    EXPECT_NEAR(c.tau, 0.4275, 1e-15);
    EXPECT_NEAR(c.nbar, 0.01405, 1e-15);
}

TEST(NodeSplitTl, EqualsComposeAndClosedForm) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> tau(0.01, 1.0), nbar(0.0, 0.1);
    for (int i = 0; i < 500; ++i) {
        const ThermalLoss s{tau(rng), nbar(rng)}, e{tau(rng), nbar(rng)}, r{tau(rng), nbar(rng)};
        const auto x = node(ChannelSpec::identity(), ChannelSpec::thermal_loss(s.tau, s.nbar));
        const auto y = node(ChannelSpec::thermal_loss(r.tau, r.nbar), ChannelSpec::identity());
        const auto split = node_split_tl(e, x, y);
        const auto composed = compose_tl(std::vector<ThermalLoss>{s, e, r});
        EXPECT_EQ(split.tau, composed.tau);
        EXPECT_EQ(split.nbar, composed.nbar);
        EXPECT_NEAR(split.tau, r.tau * s.tau * e.tau, 1e-15);
        EXPECT_NEAR(split.nbar, r.nbar + r.tau * e.nbar + e.tau * r.tau * s.nbar, 1e-14);
    }
}

TEST(NodeSplit, DisabledSplitUsesIdealInternals) {
    auto n = node(ChannelSpec::amplitude_damping(0.5), ChannelSpec::amplitude_damping(0.5));
    n.split = false;
    EXPECT_DOUBLE_EQ(node_split_ad(0.2, n, n), 0.2);
}

TEST(FibreChannel, Examples) {
    EXPECT_EQ((FibreParams{0.02, 0.002, 0.0}.transmissivity()), 1.0);
    EXPECT_EQ((FibreParams{0.02, 0.002, 0.0}.damping()), 0.0);
    EXPECT_NEAR((FibreParams{0.02, 0.002, 50.0}.transmissivity()), 0.1, 1e-15);

    const auto tl = fibre_channel({0.02, 0.002, 100.0}, Family::Bosonic);
    EXPECT_EQ(tl.kind(), ChannelKind::ThermalLoss);
    EXPECT_NEAR(tl.thermal().tau, 0.01, 1e-16);
    EXPECT_EQ(tl.thermal().nbar, 0.002);

    const auto ad = fibre_channel({0.02, 0.002, 50.0}, Family::Qubit);
    EXPECT_NEAR(ad.damping(), 0.9, 1e-15);
    EXPECT_THROW(FibreParams({0.02, 0.0, -1.0}).transmissivity(), DomainError);
}

TEST(ChannelSpec, ValidatesAndReportsFamily) {
    EXPECT_THROW(ChannelSpec::amplitude_damping(1.1), DomainError);
    EXPECT_THROW(ChannelSpec::thermal_loss(0.0, 0.1), DomainError);
    EXPECT_THROW(ChannelSpec::thermal_loss(0.5, -1.0), DomainError);
    EXPECT_THROW(ChannelSpec::pure_loss(1.5), DomainError);
    EXPECT_EQ(ChannelSpec::amplitude_damping(0.1).family(), Family::Qubit);
    EXPECT_EQ(ChannelSpec::pure_loss(0.5).family(), Family::Bosonic);
    EXPECT_FALSE(ChannelSpec::identity().family().has_value());
    EXPECT_THROW(ChannelSpec::pure_loss(0.5).damping(), FamilyError);
    EXPECT_THROW(ChannelSpec::amplitude_damping(0.5).thermal(), FamilyError);
}

TEST(CompoundChannel, ReducesAndRejectsMixtures) {
    EXPECT_THROW(CompoundChannel({}), EmptyCompound);
    EXPECT_THROW(CompoundChannel({ChannelSpec::amplitude_damping(0.1), ChannelSpec::pure_loss(0.5)}),
                 FamilyError);
    const auto pl = CompoundChannel({ChannelSpec::pure_loss(0.5), ChannelSpec::identity(),
                                     ChannelSpec::pure_loss(0.4)})
                        .reduce();
    EXPECT_EQ(pl.kind(), ChannelKind::PureLoss);
    EXPECT_DOUBLE_EQ(pl.thermal().tau, 0.2);
    const auto ad = CompoundChannel({ChannelSpec::amplitude_damping(0.1), ChannelSpec::amplitude_damping(0.2)})
                        .reduce();
    EXPECT_NEAR(ad.damping(), 0.28, 1e-15);
}
