namespace hermlat {}
