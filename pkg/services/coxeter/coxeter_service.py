import logging
from pathlib import Path
from typing import Dict

from services.coxeter.cartan import CartanDatum, load_cartan_file, parse_label
from services.coxeter.root_system_service import RootSystemService
from services.coxeter.weyl_group_service import WeylGroup

logger = logging.getLogger(__name__)


class CoxeterService:
    """
    Hands out Weyl groups by type label or Cartan document, one instance per datum.

    Attributes:
        root_service: Service used to generate root systems.
    """
    def __init__(self, root_service: RootSystemService):
        """
        Initializes the CoxeterService.

        Args:
            root_service: Root system generator.
        """
        self.root_service = root_service
        self._groups: Dict[CartanDatum, WeylGroup] = {}

    def group_for_datum(self, datum: CartanDatum) -> WeylGroup:
        group = self._groups.get(datum)
        if group is None:
            group = WeylGroup(self.root_service.build_root_system(datum))
            self._groups[datum] = group
            logger.debug("Created Weyl group %s of rank %d", datum.label, datum.rank)
        return group

    def group(self, label: str) -> WeylGroup:
        """
        Returns the Weyl group for a type label such as "B3" or "A1xA1".

        Raises:
            UnknownType: If the label is not in the finite catalogue.
        """
        return self.group_for_datum(parse_label(label))

    def group_from_file(self, path: Path) -> WeylGroup:
        """
        Returns the Weyl group of a Cartan matrix stored in a JSON document.

        Raises:
            MalformedCartan: If the document is unreadable or invalid.
            NonFiniteType: If the matrix is not of finite type.
        """
        return self.group_for_datum(load_cartan_file(path))
