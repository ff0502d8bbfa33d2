from rest_framework import pagination


class StandardResultsSetPagination(pagination.LimitOffsetPagination):
    """Standard pagination for surface listings."""
    default_limit = 20
    max_limit = 200
