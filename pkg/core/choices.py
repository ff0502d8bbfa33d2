from django.db import models


class Frequency(models.TextChoices):
    DAILY = "daily", "Daily"
    WEEKLY = "weekly", "Weekly"


class Position(models.TextChoices):
    LONG = "long", "Long"
    SHORT = "short", "Short"


class VarMethod(models.TextChoices):
    PORTFOLIO_QUANTILE = "portfolio_quantile", "Portfolio quantile"
    AGGREGATED = "aggregated", "Aggregated"


class WaitingPeriod(models.TextChoices):
    WEEK = "week", "1 week"
    MONTH = "month", "1 month"
    QUARTER = "quarter", "1 quarter"
    SEMESTER = "semester", "1 semester"
    YEAR = "year", "1 year"
    TWO_YEARS = "two_years", "2 years"
