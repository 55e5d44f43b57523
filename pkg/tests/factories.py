# pylint: disable=too-few-public-methods

"""
Test Factory to make small universes and measure configurations for testing
"""
from fractions import Fraction

import factory
from factory.fuzzy import FuzzyChoice, FuzzyInteger
from scalekit.universe import Mode, UniverseSpec
from scalekit.measures import MeasureConfig, MeasureKind


class UniverseSpecFactory(factory.Factory):
    """Creates small binary universe specs"""

    class Meta:
        """Maps factory to data model"""

        model = UniverseSpec

    n = FuzzyInteger(1, 3)
    g_max = 1
    mode = FuzzyChoice(choices=[Mode.RANK, Mode.SET])
    recall_base = factory.LazyAttribute(lambda spec: spec.n)


class MeasureConfigFactory(factory.Factory):
    """Creates configs of the measures defined on every binary universe"""

    class Meta:
        """Maps factory to data model"""

        model = MeasureConfig

    kind = FuzzyChoice(
        choices=[
            MeasureKind.PRECISION,
            MeasureKind.RECALL,
            MeasureKind.F_MEASURE,
        ]
    )
    beta = FuzzyChoice(choices=[Fraction(1), Fraction(1, 2), Fraction(2)])
